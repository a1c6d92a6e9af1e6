//! Vectors of `F2^m`, the cover order, simplicial complexes and the
//! character sums built on them.
//!
//! Coordinate `i` of `[m] = {1, .., m}` lives at bit `i - 1`. Enumerations of
//! `F2^m` run in increasing integer order `0 .. 2^m`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const MAX_DIMENSION: u8 = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("dimension {0} outside 1..={MAX_DIMENSION}")]
    DimensionOutOfRange(u32),
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: u8, right: u8 },
    #[error("index {index} outside [1, {m}]")]
    IndexOutOfRange { index: usize, m: u8 },
    #[error("bits {bits:#x} do not fit in dimension {m}")]
    BitsOutOfRange { bits: u32, m: u8 },
    #[error("a simplicial complex needs at least one face")]
    NoFaces,
    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

fn check_dimension(m: u8) -> Result<(), GeometryError> {
    if m == 0 || m > MAX_DIMENSION {
        Err(GeometryError::DimensionOutOfRange(m as u32))
    } else {
        Ok(())
    }
}

fn same_dimension(left: u8, right: u8) -> Result<(), GeometryError> {
    if left != right {
        Err(GeometryError::DimensionMismatch { left, right })
    } else {
        Ok(())
    }
}

/// Mask with the low `m` bits set.
pub const fn full_mask(m: u8) -> u32 {
    if m >= 32 {
        u32::MAX
    } else {
        (1u32 << m) - 1
    }
}

/// All submasks of `mask`, in increasing integer order.
pub fn submasks(mask: u32) -> impl Iterator<Item = u32> {
    // Walk upward: next submask above `x` is ((x | !mask) + 1) & mask.
    let mut next = Some(0u32);
    std::iter::from_fn(move || {
        let current = next?;
        next = if current == mask { None } else { Some((current | !mask).wrapping_add(1) & mask) };
        Some(current)
    })
}

/// An element of `F2^m`, `1 <= m <= 24`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BitVector {
    m: u8,
    bits: u32,
}

impl BitVector {
    pub fn new(m: u8, bits: u32) -> Result<Self, GeometryError> {
        check_dimension(m)?;
        if bits & !full_mask(m) != 0 {
            return Err(GeometryError::BitsOutOfRange { bits, m });
        }
        Ok(BitVector { m, bits })
    }

    pub fn zero(m: u8) -> Result<Self, GeometryError> {
        Self::new(m, 0)
    }

    pub fn ones(m: u8) -> Result<Self, GeometryError> {
        Self::new(m, full_mask(m))
    }

    /// Vector whose support is the given set of 1-based indices.
    pub fn from_support(m: u8, support: &[usize]) -> Result<Self, GeometryError> {
        check_dimension(m)?;
        let mut bits = 0u32;
        for &index in support {
            if index == 0 || index > m as usize {
                return Err(GeometryError::IndexOutOfRange { index, m });
            }
            bits |= 1 << (index - 1);
        }
        Ok(BitVector { m, bits })
    }

    /// Parses a comma separated list of 1-based indices ("2,3"); the empty
    /// string is the empty set.
    pub fn parse_subset(m: u8, text: &str) -> Result<Self, GeometryError> {
        let text = text.trim();
        let mut support = Vec::new();
        if !text.is_empty() {
            for part in text.split(',') {
                let index = part
                    .trim()
                    .parse::<usize>()
                    .map_err(|e| GeometryError::Parse { input: text.to_string(), reason: e.to_string() })?;
                support.push(index);
            }
        }
        Self::from_support(m, &support)
    }

    pub const fn dimension(self) -> u8 {
        self.m
    }

    pub const fn bits(self) -> u32 {
        self.bits
    }

    pub fn get(self, index: usize) -> bool {
        index >= 1 && index <= self.m as usize && self.bits >> (index - 1) & 1 == 1
    }

    pub fn support(self) -> Vec<usize> {
        (1..=self.m as usize).filter(|&i| self.get(i)).collect()
    }

    pub const fn weight(self) -> u32 {
        self.bits.count_ones()
    }

    /// `self` covers `other` iff `Supp(other) ⊆ Supp(self)`.
    pub fn covers(self, other: BitVector) -> Result<bool, GeometryError> {
        same_dimension(self.m, other.m)?;
        Ok(other.bits & !self.bits == 0)
    }

    /// Inner product over F2.
    pub fn dot(self, other: BitVector) -> Result<bool, GeometryError> {
        same_dimension(self.m, other.m)?;
        Ok((self.bits & other.bits).count_ones() & 1 == 1)
    }

    pub fn xor(self, other: BitVector) -> Result<BitVector, GeometryError> {
        same_dimension(self.m, other.m)?;
        Ok(BitVector { m: self.m, bits: self.bits ^ other.bits })
    }

    pub fn complement(self) -> BitVector {
        BitVector { m: self.m, bits: !self.bits & full_mask(self.m) }
    }

    /// Every vector of `F2^m`, increasing.
    pub fn all(m: u8) -> Result<impl Iterator<Item = BitVector>, GeometryError> {
        check_dimension(m)?;
        Ok((0..=full_mask(m)).map(move |bits| BitVector { m, bits }))
    }

    pub fn subset_string(self) -> String {
        self.support().iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",")
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 1..=self.m as usize {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector({self})")
    }
}

impl FromStr for BitVector {
    type Err = GeometryError;

    /// Coordinate 1 leftmost.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |reason: &str| GeometryError::Parse { input: s.to_string(), reason: reason.into() };
        let m = u8::try_from(s.len()).map_err(|_| err("too long"))?;
        check_dimension(m)?;
        let mut bits = 0u32;
        for (i, ch) in s.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => bits |= 1 << i,
                _ => return Err(err("expected only 0 and 1")),
            }
        }
        BitVector::new(m, bits)
    }
}

pub fn covers(v: BitVector, w: BitVector) -> Result<bool, GeometryError> {
    v.covers(w)
}

/// A down-closed subset of `F2^m`, held by its maximal faces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    m: u8,
    maximal_faces: Vec<u32>,
}

impl SimplicialComplex {
    /// `Δ_M`: every vector whose support lies inside `generator`.
    pub fn from_generator(m: u8, generator: BitVector) -> Result<Self, GeometryError> {
        check_dimension(m)?;
        same_dimension(m, generator.m)?;
        Ok(SimplicialComplex { m, maximal_faces: vec![generator.bits] })
    }

    /// Down-closure of `faces`. Faces covered by another face are dropped.
    pub fn from_maximal_faces(m: u8, faces: &[BitVector]) -> Result<Self, GeometryError> {
        check_dimension(m)?;
        if faces.is_empty() {
            return Err(GeometryError::NoFaces);
        }
        for f in faces {
            same_dimension(m, f.m)?;
        }
        let mut masks: Vec<u32> = faces.iter().map(|f| f.bits).collect();
        masks.sort_unstable();
        masks.dedup();
        let maximal: Vec<u32> =
            masks.iter().copied().filter(|&f| !masks.iter().any(|&g| g != f && f & !g == 0)).collect();
        Ok(SimplicialComplex { m, maximal_faces: maximal })
    }

    pub fn dimension(&self) -> u8 {
        self.m
    }

    pub fn maximal_faces(&self) -> Vec<BitVector> {
        self.maximal_faces.iter().map(|&bits| BitVector { m: self.m, bits }).collect()
    }

    pub fn contains(&self, v: BitVector) -> bool {
        v.m == self.m && self.contains_bits(v.bits)
    }

    pub(crate) fn contains_bits(&self, bits: u32) -> bool {
        self.maximal_faces.iter().any(|&f| bits & !f == 0)
    }

    /// Member bit words in increasing order.
    pub fn member_bits(&self) -> Vec<u32> {
        if let [single] = self.maximal_faces[..] {
            return submasks(single).collect();
        }
        let mut members: Vec<u32> = self.maximal_faces.iter().flat_map(|&f| submasks(f)).collect();
        members.sort_unstable();
        members.dedup();
        members
    }

    pub fn members(&self) -> Vec<BitVector> {
        let m = self.m;
        self.member_bits().into_iter().map(|bits| BitVector { m, bits }).collect()
    }

    /// Bit words of `F2^m \ Δ`, increasing, produced lazily.
    pub fn complement_bits(&self) -> impl Iterator<Item = u32> + '_ {
        (0..=full_mask(self.m)).filter(move |&bits| !self.contains_bits(bits))
    }

    pub fn complement_members(&self) -> impl Iterator<Item = BitVector> + '_ {
        let m = self.m;
        self.complement_bits().map(move |bits| BitVector { m, bits })
    }

    pub fn len(&self) -> u64 {
        match self.maximal_faces[..] {
            [single] => 1u64 << single.count_ones(),
            _ => self.member_bits().len() as u64,
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn complement_len(&self) -> u64 {
        (1u64 << self.m) - self.len()
    }

    /// `|Δ|` from the inclusion–exclusion over non-empty families of maximal faces.
    pub fn size_by_inclusion_exclusion(&self) -> i64 {
        self.face_families().map(|(sign, meet)| sign * (1i64 << meet.count_ones())).sum()
    }

    /// `(sign, ∩S)` for every non-empty family `S` of maximal faces.
    fn face_families(&self) -> impl Iterator<Item = (i64, u32)> + '_ {
        let count = self.maximal_faces.len();
        assert!(count < 32, "too many maximal faces for inclusion-exclusion");
        (1u32..(1u32 << count)).map(move |family| {
            let meet = (0..count)
                .filter(|i| family >> i & 1 == 1)
                .fold(full_mask(self.m), |acc, i| acc & self.maximal_faces[i]);
            let sign = if family.count_ones() % 2 == 1 { 1 } else { -1 };
            (sign, meet)
        })
    }
}

pub fn complex_from_generator(m: u8, generator: BitVector) -> Result<SimplicialComplex, GeometryError> {
    SimplicialComplex::from_generator(m, generator)
}

pub fn complex_from_maximal_faces(m: u8, faces: &[BitVector]) -> Result<SimplicialComplex, GeometryError> {
    SimplicialComplex::from_maximal_faces(m, faces)
}

/// Sparse polynomial in `y_1, .., y_m` with square-free monomials, keyed by
/// the monomial's support mask.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GeneratingPolynomial {
    m: u8,
    terms: BTreeMap<u32, i64>,
}

impl GeneratingPolynomial {
    pub fn zero(m: u8) -> Self {
        GeneratingPolynomial { m, terms: BTreeMap::new() }
    }

    /// `Σ_{v∈P} Π y_i^{v_i}` summed directly over the members of `P`.
    pub fn from_members(m: u8, members: impl IntoIterator<Item = BitVector>) -> Self {
        let mut poly = Self::zero(m);
        for v in members {
            poly.add_term(v.bits, 1);
        }
        poly
    }

    fn add_term(&mut self, monomial: u32, coefficient: i64) {
        let entry = self.terms.entry(monomial).or_insert(0);
        *entry += coefficient;
        if *entry == 0 {
            self.terms.remove(&monomial);
        }
    }

    pub fn coefficient(&self, monomial: BitVector) -> i64 {
        self.terms.get(&monomial.bits).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (BitVector, i64)> + '_ {
        let m = self.m;
        self.terms.iter().map(move |(&bits, &c)| (BitVector { m, bits }, c))
    }

    /// Value at `y_i = values[i - 1]`.
    pub fn evaluate(&self, values: &[i64]) -> i64 {
        assert_eq!(values.len(), self.m as usize, "one value per variable");
        self.terms
            .iter()
            .map(|(&mono, &c)| {
                c * (0..self.m as usize).filter(|i| mono >> i & 1 == 1).map(|i| values[i]).product::<i64>()
            })
            .sum()
    }

    pub fn evaluate_at_ones(&self) -> i64 {
        self.terms.values().sum()
    }
}

impl fmt::Display for GeneratingPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        // Degree first, then lexicographic on the sorted index list.
        let mut monomials: Vec<(Vec<usize>, i64)> = self
            .terms
            .iter()
            .map(|(&mono, &c)| ((1..=self.m as usize).filter(|i| mono >> (i - 1) & 1 == 1).collect(), c))
            .collect();
        monomials.sort_by(|(a, _), (b, _)| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        for (k, (indices, c)) in monomials.iter().enumerate() {
            let sign = if *c < 0 { "-" } else { "+" };
            if k == 0 {
                if *c < 0 {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let magnitude = c.unsigned_abs();
            let vars: String = indices.iter().map(|i| format!("y{i}")).collect();
            match (magnitude, vars.is_empty()) {
                (_, true) => write!(f, "{magnitude}")?,
                (1, false) => write!(f, "{vars}")?,
                (_, false) => write!(f, "{magnitude}{vars}")?,
            }
        }
        Ok(())
    }
}

/// Generating function of `Δ` by inclusion–exclusion over its maximal faces:
/// `Σ_{∅≠S⊆F} (-1)^{|S|+1} Π_{i∈∩S} (1 + y_i)`.
pub fn generating_function(complex: &SimplicialComplex) -> GeneratingPolynomial {
    let mut poly = GeneratingPolynomial::zero(complex.m);
    for (sign, meet) in complex.face_families() {
        for mono in submasks(meet) {
            poly.add_term(mono, sign);
        }
    }
    poly
}

/// `Ψ(α|M)`: true iff `Supp(α) ∩ M = ∅`.
pub fn psi(alpha: BitVector, generator: BitVector) -> Result<bool, GeometryError> {
    same_dimension(alpha.m, generator.m)?;
    Ok(alpha.bits & generator.bits == 0)
}

/// `χ_α(P) = Σ_{t∈P} (-1)^{α·t}` over the integers.
pub fn chi(alpha: BitVector, points: impl IntoIterator<Item = BitVector>) -> Result<i64, GeometryError> {
    let mut total = 0i64;
    for t in points {
        total += if alpha.dot(t)? { -1 } else { 1 };
    }
    Ok(total)
}

/// Closed form `χ_α(Δ_M) = 2^{|M|} Ψ(α|M)`.
pub fn chi_generated(alpha: BitVector, generator: BitVector) -> Result<i64, GeometryError> {
    Ok(if psi(alpha, generator)? { 1i64 << generator.weight() } else { 0 })
}

/// Closed form `χ_α(Δ_M^c) = 2^m δ_{0,α} - χ_α(Δ_M)`.
pub fn chi_generated_complement(alpha: BitVector, generator: BitVector) -> Result<i64, GeometryError> {
    let full = if alpha.bits == 0 { 1i64 << alpha.m } else { 0 };
    Ok(full - chi_generated(alpha, generator)?)
}
