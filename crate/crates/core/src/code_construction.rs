//! Defining sets `D = aD1 + bD2 ⊆ I^m`, the codes `C_D = {(v·d)_{d∈D}}` and
//! their binary Gray images.
//!
//! A defining point `a*t1 + b*t2` is stored as the pair of bit words
//! `(t1, t2)`. Since `(aα + bβ)·(a t1 + b t2) = b (α·t1)`, every codeword is
//! `b * u` for the parity vector `u = (α·t1)_{d∈D}` and depends on `α` alone.
//! Enumeration therefore walks the `2^m` values of `α` and credits each
//! codeword with the `2^m` messages that share it, after checking the shortcut
//! against raw ring arithmetic.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::boolean_geometry::{full_mask, submasks, BitVector, GeometryError, SimplicialComplex};
use crate::packed::{Echelon, PackedBits};
use crate::ring_i::RingElement;

/// Environment variable overriding the default work budget.
pub const BUDGET_ENV: &str = "RINGCODES_WORK_BUDGET";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("defining set for {0} is empty")]
    EmptyDefiningSet(String),
    #[error("work {required} exceeds budget {budget}")]
    BudgetExceeded { required: u128, budget: u128 },
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: u8, right: u8 },
    #[error("raw ring evaluation disagrees with b*(α·t1) at coordinate {coordinate}")]
    ReducedFormMismatch { coordinate: usize },
    #[error("codeword multiplicities are uneven; the encoder is not a homomorphism")]
    KernelLaw,
    #[error("Gray image is not closed under addition ({codewords} words, rank {rank})")]
    NotLinear { codewords: usize, rank: usize },
    #[error("Gray image changed a weight: Lee {lee} vs Hamming {hamming}")]
    IsometryViolated { lee: u32, hamming: u32 },
    #[error("{0} codewords is not a power of two")]
    NotPowerOfTwo(usize),
    #[error("unknown variant {0:?} (expected T1..T5)")]
    UnknownVariant(String),
    #[error("codewords of differing lengths")]
    RaggedCodewords,
}

/// The five simplicial defining-set families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Variant {
    /// `aΔ_M + bΔ_N`
    T1,
    /// `aΔ_M^c + bΔ_N`
    T2,
    /// `aΔ_M + bΔ_N^c`
    T3,
    /// `aΔ_M^c + bΔ_N^c`
    T4,
    /// complement of `aΔ_M + bΔ_N` in `I^m`
    T5,
}

impl Variant {
    pub const ALL: [Variant; 5] = [Variant::T1, Variant::T2, Variant::T3, Variant::T4, Variant::T5];

    pub fn formula(self) -> &'static str {
        match self {
            Variant::T1 => "aΔ_M + bΔ_N",
            Variant::T2 => "aΔ_M^c + bΔ_N",
            Variant::T3 => "aΔ_M + bΔ_N^c",
            Variant::T4 => "aΔ_M^c + bΔ_N^c",
            Variant::T5 => "(aΔ_M + bΔ_N)^c",
        }
    }

    /// `|D|` as a function of `m`, `|M|`, `|N|`.
    pub fn length(self, m: u32, m_size: u32, n_size: u32) -> u128 {
        let full = 1u128 << m;
        let gm = 1u128 << m_size;
        let gn = 1u128 << n_size;
        match self {
            Variant::T1 => gm * gn,
            Variant::T2 => (full - gm) * gn,
            Variant::T3 => gm * (full - gn),
            Variant::T4 => (full - gm) * (full - gn),
            Variant::T5 => full * full - gm * gn,
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for Variant {
    type Err = ConstructionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_uppercase().as_str() {
            "T1" => Ok(Variant::T1),
            "T2" => Ok(Variant::T2),
            "T3" => Ok(Variant::T3),
            "T4" => Ok(Variant::T4),
            "T5" => Ok(Variant::T5),
            _ => Err(ConstructionError::UnknownVariant(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DefiningSetSpec {
    Simplicial {
        m: u8,
        variant: Variant,
        m_set: BitVector,
        n_set: BitVector,
    },
    /// Explicit `D1`, `D2`; duplicates are kept, so multisets are allowed.
    Generic {
        m: u8,
        d1: Vec<BitVector>,
        d2: Vec<BitVector>,
    },
}

impl DefiningSetSpec {
    pub fn simplicial(variant: Variant, m: u8, m_set: BitVector, n_set: BitVector) -> Result<Self, ConstructionError> {
        BitVector::zero(m)?;
        for set in [m_set, n_set] {
            if set.dimension() != m {
                return Err(ConstructionError::DimensionMismatch { left: m, right: set.dimension() });
            }
        }
        Ok(DefiningSetSpec::Simplicial { m, variant, m_set, n_set })
    }

    /// `M` and `N` as comma separated 1-based indices.
    pub fn parse(variant: Variant, m: u8, m_set: &str, n_set: &str) -> Result<Self, ConstructionError> {
        let m_set = BitVector::parse_subset(m, m_set)?;
        let n_set = BitVector::parse_subset(m, n_set)?;
        Self::simplicial(variant, m, m_set, n_set)
    }

    pub fn generic(m: u8, d1: Vec<BitVector>, d2: Vec<BitVector>) -> Result<Self, ConstructionError> {
        BitVector::zero(m)?;
        for v in d1.iter().chain(&d2) {
            if v.dimension() != m {
                return Err(ConstructionError::DimensionMismatch { left: m, right: v.dimension() });
            }
        }
        Ok(DefiningSetSpec::Generic { m, d1, d2 })
    }

    pub fn dimension(&self) -> u8 {
        match self {
            DefiningSetSpec::Simplicial { m, .. } | DefiningSetSpec::Generic { m, .. } => *m,
        }
    }

    pub fn variant(&self) -> Option<Variant> {
        match self {
            DefiningSetSpec::Simplicial { variant, .. } => Some(*variant),
            DefiningSetSpec::Generic { .. } => None,
        }
    }

    /// `(M, N)` for simplicial specs.
    pub fn generators(&self) -> Option<(BitVector, BitVector)> {
        match self {
            DefiningSetSpec::Simplicial { m_set, n_set, .. } => Some((*m_set, *n_set)),
            DefiningSetSpec::Generic { .. } => None,
        }
    }

    pub fn expected_length(&self) -> u128 {
        match self {
            DefiningSetSpec::Simplicial { m, variant, m_set, n_set } => {
                variant.length(*m as u32, m_set.weight(), n_set.weight())
            }
            DefiningSetSpec::Generic { d1, d2, .. } => d1.len() as u128 * d2.len() as u128,
        }
    }
}

impl fmt::Display for DefiningSetSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DefiningSetSpec::Simplicial { m, variant, m_set, n_set } => {
                write!(f, "{variant} m={m} M={{{}}} N={{{}}}", m_set.subset_string(), n_set.subset_string())
            }
            DefiningSetSpec::Generic { m, d1, d2 } => {
                write!(f, "generic m={m} |D1|={} |D2|={}", d1.len(), d2.len())
            }
        }
    }
}

/// The ordered list of points `a*t1 + b*t2` of a defining set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DefiningSet {
    m: u8,
    points: Vec<(u32, u32)>,
}

/// Cap on materialized defining-set sizes.
const MAX_DEFINING_SET: u128 = 1 << 32;

impl DefiningSet {
    pub fn dimension(&self) -> u8 {
        self.m
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// `(t1, t2)` bit words in order.
    pub fn raw_points(&self) -> &[(u32, u32)] {
        &self.points
    }

    pub fn point(&self, index: usize) -> RingVector {
        let (t1, t2) = self.points[index];
        RingVector::from_bits(self.m, t1, t2)
    }

    pub fn points(&self) -> impl Iterator<Item = RingVector> + '_ {
        (0..self.len()).map(|i| self.point(i))
    }
}

fn product(t1s: &[u32], t2s: &[u32], out: &mut Vec<(u32, u32)>) {
    for &t1 in t1s {
        out.extend(t2s.iter().map(|&t2| (t1, t2)));
    }
}

/// Lays out `aD1 + bD2` with `t1` major and `t2` minor; for `T5` the block
/// `aΔ_M^c + bF2^m` precedes `aΔ_M + bΔ_N^c`.
pub fn build_defining_set(spec: &DefiningSetSpec) -> Result<DefiningSet, ConstructionError> {
    let m = spec.dimension();
    let required = spec.expected_length();
    if required > MAX_DEFINING_SET {
        return Err(ConstructionError::BudgetExceeded { required, budget: MAX_DEFINING_SET });
    }
    if required == 0 {
        return Err(ConstructionError::EmptyDefiningSet(spec.to_string()));
    }
    let mut points = Vec::with_capacity(required as usize);
    match spec {
        DefiningSetSpec::Generic { d1, d2, .. } => {
            let t1s: Vec<u32> = d1.iter().map(|v| v.bits()).collect();
            let t2s: Vec<u32> = d2.iter().map(|v| v.bits()).collect();
            product(&t1s, &t2s, &mut points);
        }
        DefiningSetSpec::Simplicial { variant, m_set, n_set, .. } => {
            let delta_m = SimplicialComplex::from_generator(m, *m_set)?;
            let delta_n = SimplicialComplex::from_generator(m, *n_set)?;
            let inside_m: Vec<u32> = submasks(m_set.bits()).collect();
            let inside_n: Vec<u32> = submasks(n_set.bits()).collect();
            let outside_m: Vec<u32> = delta_m.complement_bits().collect();
            let outside_n: Vec<u32> = delta_n.complement_bits().collect();
            match variant {
                Variant::T1 => product(&inside_m, &inside_n, &mut points),
                Variant::T2 => product(&outside_m, &inside_n, &mut points),
                Variant::T3 => product(&inside_m, &outside_n, &mut points),
                Variant::T4 => product(&outside_m, &outside_n, &mut points),
                Variant::T5 => {
                    let everything: Vec<u32> = (0..=full_mask(m)).collect();
                    product(&outside_m, &everything, &mut points);
                    product(&inside_m, &outside_n, &mut points);
                }
            }
        }
    }
    debug_assert_eq!(points.len() as u128, required);
    Ok(DefiningSet { m, points })
}

/// `x = aα + bβ ∈ I^m`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct RingVector {
    alpha: BitVector,
    beta: BitVector,
}

impl RingVector {
    pub fn new(alpha: BitVector, beta: BitVector) -> Result<Self, ConstructionError> {
        if alpha.dimension() != beta.dimension() {
            return Err(ConstructionError::DimensionMismatch { left: alpha.dimension(), right: beta.dimension() });
        }
        Ok(RingVector { alpha, beta })
    }

    fn from_bits(m: u8, alpha: u32, beta: u32) -> Self {
        RingVector {
            alpha: BitVector::new(m, alpha).expect("bits within dimension"),
            beta: BitVector::new(m, beta).expect("bits within dimension"),
        }
    }

    pub fn from_elements(elements: &[RingElement]) -> Result<Self, ConstructionError> {
        let m = u8::try_from(elements.len()).map_err(|_| GeometryError::DimensionOutOfRange(u32::MAX))?;
        let (mut alpha, mut beta) = (0u32, 0u32);
        for (j, x) in elements.iter().enumerate() {
            alpha |= (x.s() as u32) << j;
            beta |= (x.t() as u32) << j;
        }
        Ok(RingVector { alpha: BitVector::new(m, alpha)?, beta: BitVector::new(m, beta)? })
    }

    pub fn dimension(&self) -> u8 {
        self.alpha.dimension()
    }

    pub fn alpha(&self) -> BitVector {
        self.alpha
    }

    pub fn beta(&self) -> BitVector {
        self.beta
    }

    /// Coordinate `j` (1-based).
    pub fn element(&self, j: usize) -> RingElement {
        RingElement::new(self.alpha.get(j), self.beta.get(j))
    }

    pub fn elements(&self) -> Vec<RingElement> {
        (1..=self.dimension() as usize).map(|j| self.element(j)).collect()
    }

    /// `Σ_j x_j y_j` evaluated with the ring operations.
    pub fn dot(&self, other: &RingVector) -> Result<RingElement, ConstructionError> {
        if self.dimension() != other.dimension() {
            return Err(ConstructionError::DimensionMismatch { left: self.dimension(), right: other.dimension() });
        }
        Ok((1..=self.dimension() as usize)
            .map(|j| self.element(j) * other.element(j))
            .fold(RingElement::ZERO, |acc, x| acc + x))
    }

    pub fn add(&self, other: &RingVector) -> Result<RingVector, ConstructionError> {
        RingVector::new(self.alpha.xor(other.alpha)?, self.beta.xor(other.beta)?)
    }

    /// Lee weight `wt(β) + wt(α + β)`.
    pub fn lee_weight(&self) -> u32 {
        self.elements().iter().map(|x| x.lee_weight()).sum()
    }

    /// Gray image as a `2m`-bit string in block layout `(β | α + β)`.
    pub fn gray(&self) -> PackedBits {
        self.to_word().gray()
    }

    pub fn to_word(&self) -> RingWord {
        RingWord::from_elements(&self.elements())
    }
}

impl fmt::Display for RingVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for x in self.elements() {
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

/// A word of arbitrary length over `I`, split into its `a`- and `b`-bit planes.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct RingWord {
    s: PackedBits,
    t: PackedBits,
}

impl RingWord {
    pub fn zeros(len: usize) -> Self {
        RingWord { s: PackedBits::zeros(len), t: PackedBits::zeros(len) }
    }

    pub fn from_planes(s: PackedBits, t: PackedBits) -> Self {
        assert_eq!(s.len(), t.len(), "bit planes of different lengths");
        RingWord { s, t }
    }

    pub fn from_elements(elements: &[RingElement]) -> Self {
        RingWord {
            s: PackedBits::from_bools(elements.iter().map(|x| x.s())),
            t: PackedBits::from_bools(elements.iter().map(|x| x.t())),
        }
    }

    pub fn len(&self) -> usize {
        self.s.len()
    }

    pub fn is_empty(&self) -> bool {
        self.s.is_empty()
    }

    pub fn get(&self, index: usize) -> RingElement {
        RingElement::new(self.s.get(index), self.t.get(index))
    }

    pub fn s_plane(&self) -> &PackedBits {
        &self.s
    }

    pub fn t_plane(&self) -> &PackedBits {
        &self.t
    }

    pub fn lee_weight(&self) -> u32 {
        self.t.weight() + self.s.xor(&self.t).weight()
    }

    pub fn add(&self, other: &RingWord) -> RingWord {
        RingWord { s: self.s.xor(&other.s), t: self.t.xor(&other.t) }
    }

    /// Block layout `(t | s + t)`.
    pub fn gray(&self) -> PackedBits {
        self.t.concat(&self.s.xor(&self.t))
    }
}

impl fmt::Display for RingWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len() {
            write!(f, "{}", self.get(i))?;
        }
        Ok(())
    }
}

/// Parity vector `(α·t1)_{d∈D}`.
pub fn encode_reduced(alpha: BitVector, set: &DefiningSet) -> Result<PackedBits, ConstructionError> {
    if alpha.dimension() != set.m {
        return Err(ConstructionError::DimensionMismatch { left: set.m, right: alpha.dimension() });
    }
    Ok(parity_vector(alpha.bits(), set))
}

fn parity_vector(alpha: u32, set: &DefiningSet) -> PackedBits {
    let mut out = PackedBits::zeros(set.len());
    for (i, &(t1, _)) in set.points.iter().enumerate() {
        if (alpha & t1).count_ones() & 1 == 1 {
            out.set(i, true);
        }
    }
    out
}

fn raw_matches_reduced(v: &RingVector, set: &DefiningSet) -> Result<RingWord, ConstructionError> {
    let reduced = parity_vector(v.alpha.bits(), set);
    let mut elements = Vec::with_capacity(set.len());
    for (i, d) in set.points().enumerate() {
        let raw = v.dot(&d)?;
        let shortcut = RingElement::B.scale(reduced.get(i));
        if raw != shortcut {
            return Err(ConstructionError::ReducedFormMismatch { coordinate: i });
        }
        elements.push(raw);
    }
    Ok(RingWord::from_elements(&elements))
}

/// `c_D(v)`, evaluated with ring arithmetic and checked against `b*(α·t1)`.
pub fn encode(v: &RingVector, set: &DefiningSet) -> Result<RingWord, ConstructionError> {
    if v.dimension() != set.m {
        return Err(ConstructionError::DimensionMismatch { left: set.m, right: v.dimension() });
    }
    raw_matches_reduced(v, set)
}

/// A codeword type carrying its own weight (Lee over `I`, Hamming over F2).
pub trait Codeword: Clone + Eq + Hash + fmt::Display {
    const ALPHABET: Alphabet;
    fn weight(&self) -> u32;
    fn length(&self) -> usize;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Alphabet {
    RingI,
    Binary,
}

impl Codeword for RingWord {
    const ALPHABET: Alphabet = Alphabet::RingI;
    fn weight(&self) -> u32 {
        self.lee_weight()
    }
    fn length(&self) -> usize {
        self.len()
    }
}

impl Codeword for PackedBits {
    const ALPHABET: Alphabet = Alphabet::Binary;
    fn weight(&self) -> u32 {
        PackedBits::weight(self)
    }
    fn length(&self) -> usize {
        self.len()
    }
}

/// An enumerated code together with its weight data.
///
/// `message_profile` counts encoder inputs per weight and equals
/// `weight_distribution * kernel_size`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeTable<W> {
    length: usize,
    codewords: Vec<W>,
    kernel_size: u64,
    weight_distribution: BTreeMap<u32, u64>,
    message_profile: BTreeMap<u32, u64>,
}

pub type RingCode = CodeTable<RingWord>;
pub type BinaryCode = CodeTable<PackedBits>;

fn distribution<W: Codeword>(words: &[W]) -> BTreeMap<u32, u64> {
    let mut dist = BTreeMap::new();
    for w in words {
        *dist.entry(w.weight()).or_insert(0) += 1;
    }
    dist
}

impl<W: Codeword> CodeTable<W> {
    /// A code given by its codeword list; duplicates are merged and each word
    /// counts as one message.
    pub fn from_codewords(length: usize, words: Vec<W>) -> Result<Self, ConstructionError> {
        if words.iter().any(|w| w.length() != length) {
            return Err(ConstructionError::RaggedCodewords);
        }
        let mut seen = HashMap::new();
        let mut codewords = Vec::new();
        for w in words {
            if seen.insert(w.clone(), ()).is_none() {
                codewords.push(w);
            }
        }
        let weight_distribution = distribution(&codewords);
        Ok(CodeTable {
            length,
            message_profile: weight_distribution.clone(),
            weight_distribution,
            codewords,
            kernel_size: 1,
        })
    }

    pub fn alphabet(&self) -> Alphabet {
        W::ALPHABET
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn codewords(&self) -> &[W] {
        &self.codewords
    }

    pub fn size(&self) -> usize {
        self.codewords.len()
    }

    pub fn kernel_size(&self) -> u64 {
        self.kernel_size
    }

    pub fn message_count(&self) -> u64 {
        self.kernel_size * self.codewords.len() as u64
    }

    pub fn weight_distribution(&self) -> &BTreeMap<u32, u64> {
        &self.weight_distribution
    }

    pub fn message_profile(&self) -> &BTreeMap<u32, u64> {
        &self.message_profile
    }

    /// Distinct nonzero weights.
    pub fn nonzero_weights(&self) -> Vec<u32> {
        self.weight_distribution.keys().copied().filter(|&w| w > 0).collect()
    }

    pub fn num_weights(&self) -> usize {
        self.nonzero_weights().len()
    }

    pub fn min_nonzero_weight(&self) -> Option<u32> {
        self.nonzero_weights().first().copied()
    }

    pub fn max_weight(&self) -> Option<u32> {
        self.nonzero_weights().last().copied()
    }

    /// One codeword per line.
    pub fn dump(&self) -> String {
        self.codewords.iter().map(|w| format!("{w}\n")).collect()
    }

    /// Homogeneous weight enumerator `Σ A_w X^{N-w} Y^w` with `N` the total
    /// degree: twice the length over `I`, the length over F2.
    pub fn enumerator(&self) -> String {
        let degree = match W::ALPHABET {
            Alphabet::RingI => 2 * self.length as u64,
            Alphabet::Binary => self.length as u64,
        };
        format_enumerator(degree, &self.weight_distribution)
    }
}

/// Formats `Σ A_w X^{degree-w} Y^w`, terms in increasing `w`.
pub fn format_enumerator(degree: u64, dist: &BTreeMap<u32, u64>) -> String {
    let power = |var: &str, e: u64| match e {
        0 => String::new(),
        1 => var.to_string(),
        _ => format!("{var}^{e}"),
    };
    let terms: Vec<String> = dist
        .iter()
        .filter(|(_, &count)| count > 0)
        .map(|(&w, &count)| {
            let monomial = format!("{}{}", power("X", degree - w as u64), power("Y", w as u64));
            match (count, monomial.is_empty()) {
                (c, true) => c.to_string(),
                (1, false) => monomial,
                (c, false) => format!("{c}{monomial}"),
            }
        })
        .collect();
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    }
}

/// Upper bound on `2^m * |D|` parity evaluations in [`enumerate_code`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WorkBudget(pub u128);

impl WorkBudget {
    pub const DEFAULT: WorkBudget = WorkBudget(1 << 32);

    /// The default, or the value of `RINGCODES_WORK_BUDGET` when set.
    pub fn from_env() -> Result<Self, String> {
        match std::env::var(BUDGET_ENV) {
            Ok(text) => match text.trim().parse::<u128>() {
                Ok(0) => Err(format!("{BUDGET_ENV} must be positive")),
                Ok(v) => Ok(WorkBudget(v)),
                Err(e) => Err(format!("{BUDGET_ENV}={text:?}: {e}")),
            },
            Err(_) => Ok(Self::DEFAULT),
        }
    }

    pub fn check(self, required: u128) -> Result<(), ConstructionError> {
        if required > self.0 {
            Err(ConstructionError::BudgetExceeded { required, budget: self.0 })
        } else {
            Ok(())
        }
    }
}

impl Default for WorkBudget {
    fn default() -> Self {
        Self::DEFAULT
    }
}

pub fn enumeration_work(set: &DefiningSet) -> u128 {
    (1u128 << set.m) * set.len() as u128
}

/// Raw-arithmetic checks below this many ring products cover every `β`.
const EXHAUSTIVE_CHECK_LIMIT: u128 = 1 << 22;

/// Compares raw ring evaluation with the `b*(α·t1)` shortcut: for every `α`
/// against every `β` on small inputs, otherwise against `β = 0` and one
/// `α`-dependent `β`.
fn check_reduced_form(set: &DefiningSet) -> Result<(), ConstructionError> {
    let m = set.m;
    let mask = full_mask(m);
    let products = (1u128 << (2 * m as u32)) * set.len() as u128 * m as u128;
    let exhaustive = products <= EXHAUSTIVE_CHECK_LIMIT;
    for alpha in 0..=mask {
        let betas: Vec<u32> =
            if exhaustive { (0..=mask).collect() } else { vec![0, (alpha.rotate_left(7) ^ 0x9e37_79b9) & mask] };
        for beta in betas {
            raw_matches_reduced(&RingVector::from_bits(m, alpha, beta), set)?;
        }
    }
    Ok(())
}

/// Enumerates `C_D` over all `4^m` messages.
pub fn enumerate_code(set: &DefiningSet, budget: WorkBudget) -> Result<RingCode, ConstructionError> {
    budget.check(enumeration_work(set))?;
    check_reduced_form(set)?;

    let m = set.m;
    let n = set.len();
    let per_alpha = 1u64 << m;
    let mut index: HashMap<PackedBits, usize> = HashMap::new();
    let mut parities: Vec<PackedBits> = Vec::new();
    let mut hits: Vec<u64> = Vec::new();
    for alpha in 0..=full_mask(m) {
        let u = parity_vector(alpha, set);
        match index.get(&u) {
            Some(&i) => hits[i] += 1,
            None => {
                index.insert(u.clone(), parities.len());
                parities.push(u);
                hits.push(1);
            }
        }
    }

    let kernel_alphas = hits[0];
    if hits.iter().any(|&h| h != kernel_alphas) {
        return Err(ConstructionError::KernelLaw);
    }
    let kernel_size = kernel_alphas * per_alpha;

    let codewords: Vec<RingWord> = parities.into_iter().map(|u| RingWord { s: PackedBits::zeros(n), t: u }).collect();
    let weight_distribution = distribution(&codewords);
    let message_profile = weight_distribution.iter().map(|(&w, &c)| (w, c * kernel_size)).collect();
    Ok(CodeTable { length: n, codewords, kernel_size, weight_distribution, message_profile })
}

/// Checks that `words` (with distinct entries) is an F2-subspace and returns
/// its dimension: the span has `2^rank` elements and contains `words`, so
/// equality of sizes is equivalent to closure.
pub fn check_binary_linear(words: &[PackedBits]) -> Result<usize, ConstructionError> {
    let mut echelon = Echelon::new();
    for w in words {
        echelon.insert(w);
    }
    let rank = echelon.rank();
    if rank >= usize::BITS as usize || words.len() != 1usize << rank {
        return Err(ConstructionError::NotLinear { codewords: words.len(), rank });
    }
    Ok(rank)
}

/// Binary image under the Gray map, with weights carried over and linearity
/// verified.
pub fn gray_image(code: &RingCode) -> Result<BinaryCode, ConstructionError> {
    let images: Vec<PackedBits> = code.codewords.iter().map(RingWord::gray).collect();
    for (src, img) in code.codewords.iter().zip(&images) {
        let (lee, hamming) = (src.lee_weight(), img.weight());
        if lee != hamming {
            return Err(ConstructionError::IsometryViolated { lee, hamming });
        }
    }
    check_binary_linear(&images)?;
    Ok(CodeTable {
        length: 2 * code.length,
        weight_distribution: distribution(&images),
        codewords: images,
        kernel_size: code.kernel_size,
        message_profile: code.message_profile.clone(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BinaryParams {
    pub n: u64,
    pub k: u32,
    /// `None` for the zero code.
    pub d: Option<u64>,
}

impl BinaryParams {
    pub fn is_degenerate(&self) -> bool {
        self.k == 0
    }
}

impl fmt::Display for BinaryParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.d {
            Some(d) => write!(f, "[{}, {}, {}]", self.n, self.k, d),
            None => write!(f, "[{}, {}, -]", self.n, self.k),
        }
    }
}

pub fn binary_params(code: &BinaryCode) -> Result<BinaryParams, ConstructionError> {
    let size = code.size();
    if !size.is_power_of_two() {
        return Err(ConstructionError::NotPowerOfTwo(size));
    }
    Ok(BinaryParams { n: code.length as u64, k: size.trailing_zeros(), d: code.min_nonzero_weight().map(u64::from) })
}
