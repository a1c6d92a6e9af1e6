//! Fixed-length bit strings packed into `u64` words, used for codewords whose
//! length is far beyond a single machine word.

use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PackedBits {
    len: usize,
    words: Vec<u64>,
}

const WORD: usize = 64;

fn word_count(len: usize) -> usize {
    len.div_ceil(WORD)
}

impl PackedBits {
    pub fn zeros(len: usize) -> Self {
        PackedBits { len, words: vec![0; word_count(len)] }
    }

    pub fn ones(len: usize) -> Self {
        let mut bits = PackedBits { len, words: vec![u64::MAX; word_count(len)] };
        bits.clear_tail();
        bits
    }

    pub fn from_bools(values: impl IntoIterator<Item = bool>) -> Self {
        let mut words = Vec::new();
        let mut len = 0;
        for v in values {
            if len % WORD == 0 {
                words.push(0);
            }
            if v {
                words[len / WORD] |= 1 << (len % WORD);
            }
            len += 1;
        }
        PackedBits { len, words }
    }

    fn clear_tail(&mut self) {
        let rem = self.len % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn get(&self, index: usize) -> bool {
        assert!(index < self.len, "bit {index} out of range {}", self.len);
        self.words[index / WORD] >> (index % WORD) & 1 == 1
    }

    pub fn set(&mut self, index: usize, value: bool) {
        assert!(index < self.len, "bit {index} out of range {}", self.len);
        let mask = 1u64 << (index % WORD);
        if value {
            self.words[index / WORD] |= mask;
        } else {
            self.words[index / WORD] &= !mask;
        }
    }

    pub fn weight(&self) -> u32 {
        self.words.iter().map(|w| w.count_ones()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    fn check_len(&self, other: &Self) {
        assert_eq!(self.len, other.len, "bit strings of different lengths");
    }

    pub fn xor(&self, other: &Self) -> Self {
        self.check_len(other);
        let words = self.words.iter().zip(&other.words).map(|(a, b)| a ^ b).collect();
        PackedBits { len: self.len, words }
    }

    pub fn xor_assign(&mut self, other: &Self) {
        self.check_len(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    /// `|Supp(self) ∩ Supp(other)|`.
    pub fn overlap(&self, other: &Self) -> u32 {
        self.check_len(other);
        self.words.iter().zip(&other.words).map(|(a, b)| (a & b).count_ones()).sum()
    }

    /// Inner product over F2.
    pub fn dot(&self, other: &Self) -> bool {
        self.overlap(other) & 1 == 1
    }

    /// `Supp(self) ⊆ Supp(other)`.
    pub fn is_covered_by(&self, other: &Self) -> bool {
        self.check_len(other);
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn concat(&self, other: &Self) -> Self {
        PackedBits::from_bools(self.iter().chain(other.iter()))
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    /// Index of the lowest set bit.
    pub fn first_one(&self) -> Option<usize> {
        self.words.iter().enumerate().find(|(_, &w)| w != 0).map(|(i, w)| i * WORD + w.trailing_zeros() as usize)
    }
}

impl fmt::Display for PackedBits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for PackedBits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PackedBits({self})")
    }
}

/// Incremental Gaussian elimination over F2. Keeps a reduced basis keyed by
/// pivot position.
#[derive(Debug, Clone, Default)]
pub struct Echelon {
    rows: Vec<(usize, PackedBits)>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    fn reduce(&self, v: &PackedBits) -> PackedBits {
        let mut r = v.clone();
        for (pivot, row) in &self.rows {
            if r.get(*pivot) {
                r.xor_assign(row);
            }
        }
        r
    }

    pub fn contains(&self, v: &PackedBits) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v`; returns `true` when it raised the rank.
    pub fn insert(&mut self, v: &PackedBits) -> bool {
        let r = self.reduce(v);
        let Some(pivot) = r.first_one() else {
            return false;
        };
        for (_, row) in self.rows.iter_mut() {
            if row.get(pivot) {
                row.xor_assign(&r);
            }
        }
        self.rows.push((pivot, r));
        true
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }
}
