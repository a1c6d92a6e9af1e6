//! Certificates for constructed codes: closed-form Lee distributions and
//! their comparison with enumeration, self-orthogonality, minimality,
//! Griesmer optimality, and the replicated-simplex structure of one-weight
//! images.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::boolean_geometry::{full_mask, BitVector};
use crate::code_construction::{
    binary_params, build_defining_set, enumerate_code, gray_image, BinaryCode, BinaryParams, ConstructionError,
    DefiningSetSpec, RingCode, Variant, WorkBudget,
};
use crate::packed::{Echelon, PackedBits};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error("{codewords} codewords exceed the pairwise-scan limit {limit}")]
    TooLarge { codewords: usize, limit: usize },
    #[error("the zero code has no nonzero weights")]
    ZeroCode,
    #[error("code has {0} distinct nonzero weights, not one")]
    NotOneWeight(usize),
    #[error("Griesmer check needs k >= 1 and d >= 1 (got k={k}, d={d})")]
    InvalidGriesmerInput { k: u32, d: u64 },
    #[error("|M|+|N| = {sum} lies outside both theta ranges for m = {m}")]
    ThetaOutOfRange { m: u32, sum: u32 },
    #[error("|M| = {m_size} with m = {m}: the image is not the two-weight code the theta bounds describe")]
    ThetaNotApplicable { m: u32, m_size: u32 },
    #[error("no closed form for generic defining sets")]
    NoPrediction,
    #[error("unknown analysis {0:?}")]
    UnknownAnalysis(String),
}

/// Codes up to this size get an exhaustive pairwise minimality scan.
pub const MINIMALITY_SCAN_LIMIT: usize = 1 << 16;

/// Above this size self-orthogonality is checked on a basis only.
pub const SELF_ORTHOGONAL_PAIR_LIMIT: usize = 1 << 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PredictedRow {
    pub lee_weight: u64,
    pub messages: u64,
}

/// Lee weight rows of the closed-form tables, in table order (largest
/// weight first). Rows may carry zero frequency or coincide in weight on
/// boundary parameters; [`PredictedDistribution::profile`] merges them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PredictedDistribution {
    pub variant: Variant,
    pub m: u32,
    pub m_size: u32,
    pub n_size: u32,
    pub rows: Vec<PredictedRow>,
    pub length: u64,
    pub code_size: u64,
    pub binary: BinaryParams,
}

impl PredictedDistribution {
    /// Message counts per Lee weight with empty rows dropped.
    pub fn profile(&self) -> BTreeMap<u64, u64> {
        let mut merged = BTreeMap::new();
        for row in &self.rows {
            if row.messages > 0 {
                *merged.entry(row.lee_weight).or_insert(0) += row.messages;
            }
        }
        merged
    }

    /// Codeword counts per Lee weight.
    pub fn codeword_distribution(&self) -> BTreeMap<u64, u64> {
        let kernel = self.total_messages() / self.code_size;
        self.profile().into_iter().map(|(w, c)| (w, c / kernel)).collect()
    }

    pub fn total_messages(&self) -> u64 {
        1u64 << (2 * self.m)
    }

    pub fn num_weights(&self) -> usize {
        self.profile().keys().filter(|&&w| w > 0).count()
    }

    pub fn is_degenerate(&self) -> bool {
        self.length == 0 || self.code_size == 1
    }
}

/// Closed-form Lee weight distribution of `C_D` for the given variant.
pub fn predicted_distribution(variant: Variant, m: u32, m_size: u32, n_size: u32) -> PredictedDistribution {
    assert!(m_size <= m && n_size <= m && m <= 24, "parameters out of range");
    let p = |e: u32| 1u64 << e;
    let full = p(m);
    let (gm, gn) = (p(m_size), p(n_size));
    // Frequencies shared by several tables.
    let psi_zero = p(2 * m - m_size) * (gm - 1);
    let psi_one_nonzero = full * (p(m - m_size) - 1);
    let row = |lee_weight, messages| PredictedRow { lee_weight, messages };
    let rows = match variant {
        Variant::T1 => vec![row(gm * gn, psi_zero), row(0, p(2 * m - m_size))],
        Variant::T2 => vec![row(p(m + n_size), psi_one_nonzero), row((full - gm) * gn, psi_zero), row(0, full)],
        Variant::T3 => vec![row((full - gn) * gm, psi_zero), row(0, p(2 * m - m_size))],
        Variant::T4 => {
            vec![row(full * (full - gn), psi_one_nonzero), row((full - gm) * (full - gn), psi_zero), row(0, full)]
        }
        Variant::T5 => vec![row(p(2 * m), psi_one_nonzero), row(p(2 * m) - p(m_size + n_size), psi_zero), row(0, full)],
    };
    let length = variant.length(m, m_size, n_size) as u64;
    let mut prediction = PredictedDistribution {
        variant,
        m,
        m_size,
        n_size,
        rows,
        length,
        code_size: 1,
        binary: BinaryParams { n: 2 * length, k: 0, d: None },
    };
    // |C_D| = |I^m| / |ker c_D|, the kernel being the weight-0 messages.
    let kernel = prediction.profile().get(&0).copied().unwrap_or(0);
    prediction.code_size = prediction.total_messages() / kernel;
    prediction.binary.k = prediction.code_size.trailing_zeros();
    prediction.binary.d = prediction.profile().keys().copied().find(|&w| w > 0);
    prediction
}

/// An enumerated code and its Gray image, or the reason there is none.
#[derive(Debug, Clone)]
#[allow(clippy::large_enum_variant)]
pub enum CodeInstance {
    Built { spec: DefiningSetSpec, ring: RingCode, binary: BinaryCode, params: BinaryParams },
    EmptyDefiningSet { spec: DefiningSetSpec },
}

impl CodeInstance {
    pub fn spec(&self) -> &DefiningSetSpec {
        match self {
            CodeInstance::Built { spec, .. } | CodeInstance::EmptyDefiningSet { spec } => spec,
        }
    }

    /// Messages per Lee weight. An empty defining set gives the length-0
    /// code, where all `4^m` messages have weight 0.
    pub fn message_profile(&self) -> BTreeMap<u64, u64> {
        match self {
            CodeInstance::Built { ring, .. } => ring.message_profile().iter().map(|(&w, &c)| (w as u64, c)).collect(),
            CodeInstance::EmptyDefiningSet { spec } => {
                [(0, 1u64 << (2 * spec.dimension() as u32))].into_iter().collect()
            }
        }
    }
}

pub fn construct_instance(spec: &DefiningSetSpec, budget: WorkBudget) -> Result<CodeInstance, AnalysisError> {
    let set = match build_defining_set(spec) {
        Ok(set) => set,
        Err(ConstructionError::EmptyDefiningSet(_)) => {
            return Ok(CodeInstance::EmptyDefiningSet { spec: spec.clone() })
        }
        Err(e) => return Err(e.into()),
    };
    let ring = enumerate_code(&set, budget)?;
    let binary = gray_image(&ring)?;
    let params = binary_params(&binary)?;
    Ok(CodeInstance::Built { spec: spec.clone(), ring, binary, params })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileMismatch {
    pub lee_weight: u64,
    pub predicted: u64,
    pub observed: u64,
}

/// Enumerated message profile against the closed form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PredictionCheck {
    pub variant: Variant,
    pub m: u32,
    pub m_set: Vec<usize>,
    pub n_set: Vec<usize>,
    pub empty_defining_set: bool,
    pub predicted: BTreeMap<u64, u64>,
    pub observed: BTreeMap<u64, u64>,
    pub mismatches: Vec<ProfileMismatch>,
}

impl PredictionCheck {
    pub fn matched(&self) -> bool {
        self.mismatches.is_empty()
    }
}

fn compare_profiles(predicted: &BTreeMap<u64, u64>, observed: &BTreeMap<u64, u64>) -> Vec<ProfileMismatch> {
    let mut weights: Vec<u64> = predicted.keys().chain(observed.keys()).copied().collect();
    weights.sort_unstable();
    weights.dedup();
    weights
        .into_iter()
        .filter_map(|w| {
            let p = predicted.get(&w).copied().unwrap_or(0);
            let o = observed.get(&w).copied().unwrap_or(0);
            (p != o).then_some(ProfileMismatch { lee_weight: w, predicted: p, observed: o })
        })
        .collect()
}

pub fn check_instance(instance: &CodeInstance) -> Result<PredictionCheck, AnalysisError> {
    let DefiningSetSpec::Simplicial { m, variant, m_set, n_set } = instance.spec() else {
        return Err(AnalysisError::NoPrediction);
    };
    let prediction = predicted_distribution(*variant, *m as u32, m_set.weight(), n_set.weight());
    let predicted = prediction.profile();
    let observed = instance.message_profile();
    Ok(PredictionCheck {
        variant: *variant,
        m: *m as u32,
        m_set: m_set.support(),
        n_set: n_set.support(),
        empty_defining_set: matches!(instance, CodeInstance::EmptyDefiningSet { .. }),
        mismatches: compare_profiles(&predicted, &observed),
        predicted,
        observed,
    })
}

pub fn verify_against_prediction(spec: &DefiningSetSpec, budget: WorkBudget) -> Result<PredictionCheck, AnalysisError> {
    if spec.variant().is_none() {
        return Err(AnalysisError::NoPrediction);
    }
    check_instance(&construct_instance(spec, budget)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "kebab-case")]
pub enum SelfOrthogonality {
    YesDirect,
    No { left: String, right: String },
}

impl SelfOrthogonality {
    pub fn holds(&self) -> bool {
        matches!(self, SelfOrthogonality::YesDirect)
    }
}

/// Codewords that raise the rank, i.e. a basis drawn from the code itself.
fn basis_of(code: &BinaryCode) -> Vec<&PackedBits> {
    let mut echelon = Echelon::new();
    code.codewords().iter().filter(|w| echelon.insert(w)).collect()
}

/// Every pair (including a word with itself) meets in an even number of
/// positions. Large codes are checked on a basis, which is exact by
/// bilinearity.
pub fn is_self_orthogonal(code: &BinaryCode) -> SelfOrthogonality {
    let words: Vec<&PackedBits> =
        if code.size() > SELF_ORTHOGONAL_PAIR_LIMIT { basis_of(code) } else { code.codewords().iter().collect() };
    for (i, u) in words.iter().enumerate() {
        for v in &words[i..] {
            if u.dot(v) {
                return SelfOrthogonality::No { left: u.to_string(), right: v.to_string() };
            }
        }
    }
    SelfOrthogonality::YesDirect
}

pub fn weights_divisible_by_4(code: &BinaryCode) -> bool {
    code.nonzero_weights().iter().all(|w| w % 4 == 0)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "kebab-case")]
pub enum Minimality {
    Yes,
    /// `smaller` is covered by `larger`.
    No {
        smaller: String,
        larger: String,
    },
}

impl Minimality {
    pub fn holds(&self) -> bool {
        matches!(self, Minimality::Yes)
    }
}

/// No nonzero codeword's support lies inside another's.
pub fn is_minimal_exhaustive(code: &BinaryCode) -> Result<Minimality, AnalysisError> {
    if code.size() > MINIMALITY_SCAN_LIMIT {
        return Err(AnalysisError::TooLarge { codewords: code.size(), limit: MINIMALITY_SCAN_LIMIT });
    }
    let nonzero: Vec<&PackedBits> = code.codewords().iter().filter(|w| !w.is_zero()).collect();
    for u in &nonzero {
        for v in &nonzero {
            if u != v && u.is_covered_by(v) {
                return Ok(Minimality::No { smaller: u.to_string(), larger: v.to_string() });
            }
        }
    }
    Ok(Minimality::Yes)
}

/// `wt0 / wt∞` against `(q-1)/q = 1/2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbCondition {
    pub min_weight: u64,
    pub max_weight: u64,
    pub holds: bool,
}

impl AbCondition {
    pub fn ratio(&self) -> f64 {
        self.min_weight as f64 / self.max_weight as f64
    }
}

pub fn ab_condition(code: &BinaryCode) -> Result<AbCondition, AnalysisError> {
    let (Some(min), Some(max)) = (code.min_nonzero_weight(), code.max_weight()) else {
        return Err(AnalysisError::ZeroCode);
    };
    let (min, max) = (min as u64, max as u64);
    Ok(AbCondition { min_weight: min, max_weight: max, holds: 2 * min > max })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GriesmerStatus {
    /// Meets the bound with equality.
    GriesmerCode,
    /// No `[n, k, d+1]` code can exist.
    CertifiedOptimal,
    Inconclusive,
    /// The parameters violate the bound.
    InfeasibleParameters,
}

impl GriesmerStatus {
    pub fn is_certified_optimal(self) -> bool {
        matches!(self, GriesmerStatus::GriesmerCode | GriesmerStatus::CertifiedOptimal)
    }
}

impl fmt::Display for GriesmerStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GriesmerStatus::GriesmerCode => "griesmer-code",
            GriesmerStatus::CertifiedOptimal => "certified-optimal",
            GriesmerStatus::Inconclusive => "inconclusive",
            GriesmerStatus::InfeasibleParameters => "infeasible-parameters",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GriesmerCheck {
    pub n: u64,
    pub k: u32,
    pub d: u64,
    pub sum_at_d: u64,
    pub sum_at_d_plus_1: u64,
    pub status: GriesmerStatus,
}

/// `Σ_{i<k} ⌈d / 2^i⌉`.
pub fn griesmer_sum(k: u32, d: u64) -> u64 {
    (0..k).map(|i| d.div_ceil(1u64 << i)).sum()
}

pub fn griesmer_check(n: u64, k: u32, d: u64) -> Result<GriesmerCheck, AnalysisError> {
    if k == 0 || d == 0 || k > 63 {
        return Err(AnalysisError::InvalidGriesmerInput { k, d });
    }
    let sum_at_d = griesmer_sum(k, d);
    let sum_at_d_plus_1 = griesmer_sum(k, d + 1);
    let status = if sum_at_d > n {
        GriesmerStatus::InfeasibleParameters
    } else if sum_at_d == n {
        GriesmerStatus::GriesmerCode
    } else if sum_at_d_plus_1 > n {
        GriesmerStatus::CertifiedOptimal
    } else {
        GriesmerStatus::Inconclusive
    };
    Ok(GriesmerCheck { n, k, d, sum_at_d, sum_at_d_plus_1, status })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ThetaCase {
    /// `1 <= |M|+|N| <= m-1`, `θ1 = 2^{|N|+1} - 1`, optimal iff `0 < θ1 < |M|+|N|+1`.
    Theta1,
    /// `m <= |M|+|N| <= 2m-1`, `θ2 = 2^{|M|+|N|+1-m}(2^{m-|M|} - 1)`, optimal iff `0 < θ2 < m`.
    Theta2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThetaPrediction {
    pub case: ThetaCase,
    pub value: i64,
    pub predicted_optimal: bool,
}

/// Optimality prediction for the Gray image of a `T2` code. The Griesmer sum
/// at `d` equals `n - θ` and the sum at `d+1` equals `n - θ + |M|+|N|+1`
/// (first range) or `n - θ + m` (second range).
///
/// Both identities use `d = (2^m - 2^|M|) 2^|N|`, which needs `∅ ≠ M ≠ [m]`:
/// `M = ∅` gives a one-weight code with `d = 2^{m+|N|}` and `M = [m]` an
/// empty defining set, so those generators are rejected.
pub fn theta_conditions(m: u32, m_size: u32, n_size: u32) -> Result<ThetaPrediction, AnalysisError> {
    let sum = m_size + n_size;
    if m_size > m || n_size > m || m == 0 {
        return Err(AnalysisError::ThetaOutOfRange { m, sum });
    }
    if m_size == 0 || m_size == m {
        return Err(AnalysisError::ThetaNotApplicable { m, m_size });
    }
    if (1..m).contains(&sum) {
        let value = (1i64 << (n_size + 1)) - 1;
        Ok(ThetaPrediction { case: ThetaCase::Theta1, value, predicted_optimal: 0 < value && value < sum as i64 + 1 })
    } else if (m..2 * m).contains(&sum) {
        let value = (1i64 << (sum + 1 - m)) * ((1i64 << (m - m_size)) - 1);
        Ok(ThetaPrediction { case: ThetaCase::Theta2, value, predicted_optimal: 0 < value && value < m as i64 })
    } else {
        Err(AnalysisError::ThetaOutOfRange { m, sum })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "kebab-case")]
pub enum SimplexFinding {
    /// Nonzero columns are `r` copies of every nonzero vector of `F2^k`.
    Replicated {
        k: u32,
        r: u64,
        zero_columns: u64,
    },
    StructureCheckFailed,
}

/// Largest dimension whose column histogram is tabulated.
const SIMPLEX_MAX_K: u32 = 24;

/// Column-multiset test for one-weight codes: strips zero coordinates, reads
/// the remaining columns of a basis matrix as vectors of `F2^k` and requires
/// each nonzero vector to appear the same number `r` of times, with
/// `r * 2^{k-1}` equal to the common weight.
pub fn simplex_structure(code: &BinaryCode) -> Result<SimplexFinding, AnalysisError> {
    let weights = code.nonzero_weights();
    if weights.len() != 1 {
        return Err(AnalysisError::NotOneWeight(weights.len()));
    }
    let weight = weights[0] as u64;
    let basis = basis_of(code);
    let k = basis.len() as u32;
    if k > SIMPLEX_MAX_K {
        return Ok(SimplexFinding::StructureCheckFailed);
    }
    let mut histogram = vec![0u64; 1 << k];
    for j in 0..code.length() {
        let column = basis.iter().enumerate().fold(0usize, |acc, (i, row)| acc | (row.get(j) as usize) << i);
        histogram[column] += 1;
    }
    let zero_columns = histogram[0];
    let r = histogram[1];
    let uniform = r > 0 && histogram[1..].iter().all(|&c| c == r);
    if uniform && r << (k - 1) == weight {
        Ok(SimplexFinding::Replicated { k, r, zero_columns })
    } else {
        Ok(SimplexFinding::StructureCheckFailed)
    }
}

/// Selectable analyses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Analysis {
    Weights,
    Gray,
    Minimal,
    SelfOrthogonal,
    Griesmer,
    Simplex,
    Verify,
}

impl Analysis {
    pub const ALL: [Analysis; 7] = [
        Analysis::Weights,
        Analysis::Gray,
        Analysis::Minimal,
        Analysis::SelfOrthogonal,
        Analysis::Griesmer,
        Analysis::Simplex,
        Analysis::Verify,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Analysis::Weights => "weights",
            Analysis::Gray => "gray",
            Analysis::Minimal => "minimal",
            Analysis::SelfOrthogonal => "self-orthogonal",
            Analysis::Griesmer => "griesmer",
            Analysis::Simplex => "simplex",
            Analysis::Verify => "verify",
        }
    }
}

impl FromStr for Analysis {
    type Err = AnalysisError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        Analysis::ALL.into_iter().find(|a| a.name() == s).ok_or_else(|| AnalysisError::UnknownAnalysis(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "kebab-case")]
pub enum MinimalFinding {
    YesExhaustive,
    /// Exhaustive scan skipped; Ashikhmin–Barg suffices.
    YesAb,
    No {
        smaller: String,
        larger: String,
    },
    Undecided,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "kebab-case")]
pub enum SimplexStatus {
    Replicated { k: u32, r: u64, zero_columns: u64 },
    NotOneWeight,
    OneWeightButStructureCheckFailed,
}

/// Closed-form expectation compared with what was computed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expectation {
    pub check: String,
    pub expected: String,
    pub observed: String,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub spec: String,
    pub variant: Option<Variant>,
    pub m: u32,
    pub m_set: Vec<usize>,
    pub n_set: Vec<usize>,
    pub defining_set_length: u64,
    /// Set for empty defining sets and zero codes.
    pub degenerate: Option<String>,
    pub code_size: u64,
    pub kernel_size: u64,
    pub lee_enumerator: Option<String>,
    pub params: Option<BinaryParams>,
    pub num_weights: usize,
    pub minimal: Option<MinimalFinding>,
    pub ab: Option<AbCondition>,
    pub self_orthogonal: Option<SelfOrthogonality>,
    pub weights_div4: Option<bool>,
    pub griesmer: Option<GriesmerCheck>,
    pub theta: Option<ThetaPrediction>,
    pub simplex: Option<SimplexStatus>,
    pub prediction: Option<PredictionCheck>,
    pub expectations: Vec<Expectation>,
}

impl AnalysisReport {
    pub fn all_expectations_met(&self) -> bool {
        self.expectations.iter().all(|e| e.ok)
    }

    pub fn optimality(&self) -> Option<GriesmerStatus> {
        self.griesmer.map(|g| g.status)
    }

    pub fn failed_expectations(&self) -> impl Iterator<Item = &Expectation> {
        self.expectations.iter().filter(|e| !e.ok)
    }
}

fn expect(report: &mut AnalysisReport, check: &str, expected: impl ToString, observed: impl ToString) {
    let (expected, observed) = (expected.to_string(), observed.to_string());
    report.expectations.push(Expectation { check: check.to_string(), ok: expected == observed, expected, observed });
}

/// Runs the requested analyses on one defining-set spec.
pub fn analyze(
    spec: &DefiningSetSpec,
    analyses: &[Analysis],
    budget: WorkBudget,
) -> Result<AnalysisReport, AnalysisError> {
    let wants = |a: Analysis| analyses.contains(&a);
    let instance = construct_instance(spec, budget)?;
    let m = spec.dimension() as u32;
    let (m_set, n_set) = spec.generators().map(|(a, b)| (a.support(), b.support())).unwrap_or_default();
    let mut report = AnalysisReport {
        spec: spec.to_string(),
        variant: spec.variant(),
        m,
        m_set,
        n_set,
        defining_set_length: spec.expected_length() as u64,
        degenerate: None,
        code_size: 1,
        kernel_size: 1u64 << (2 * m),
        lee_enumerator: None,
        params: None,
        num_weights: 0,
        minimal: None,
        ab: None,
        self_orthogonal: None,
        weights_div4: None,
        griesmer: None,
        theta: None,
        simplex: None,
        prediction: None,
        expectations: Vec::new(),
    };

    let prediction = match spec {
        DefiningSetSpec::Simplicial { variant, m_set, n_set, .. } => {
            Some(predicted_distribution(*variant, m, m_set.weight(), n_set.weight()))
        }
        DefiningSetSpec::Generic { .. } => None,
    };
    if wants(Analysis::Verify) && prediction.is_some() {
        let check = check_instance(&instance)?;
        expect(&mut report, "lee-distribution", "match", if check.matched() { "match" } else { "mismatch" });
        report.prediction = Some(check);
    }

    let CodeInstance::Built { ring, binary, params, .. } = &instance else {
        report.degenerate = Some("empty defining set".to_string());
        return Ok(report);
    };
    report.code_size = ring.size() as u64;
    report.kernel_size = ring.kernel_size();
    report.lee_enumerator = Some(ring.enumerator());
    report.params = Some(*params);
    report.num_weights = binary.num_weights();
    if params.is_degenerate() {
        report.degenerate = Some("zero code".to_string());
        return Ok(report);
    }

    let (m_size, n_size) = prediction.as_ref().map(|p| (p.m_size, p.n_size)).unwrap_or((0, 0));
    let variant = spec.variant();

    if wants(Analysis::Weights) {
        if let Some(p) = &prediction {
            let observed = report.num_weights;
            expect(&mut report, "num-weights", p.num_weights(), observed);
        }
    }
    if wants(Analysis::Gray) {
        if let Some(p) = &prediction {
            expect(&mut report, "binary-params", p.binary, params);
        }
    }

    if wants(Analysis::SelfOrthogonal) {
        let so = is_self_orthogonal(binary);
        let div4 = weights_divisible_by_4(binary);
        if div4 {
            expect(&mut report, "div4-implies-self-orthogonal", true, so.holds());
        }
        if variant.is_some() && m_size + n_size >= 2 {
            expect(&mut report, "self-orthogonal", true, so.holds());
        }
        report.weights_div4 = Some(div4);
        report.self_orthogonal = Some(so);
    }

    if wants(Analysis::Minimal) {
        let ab = ab_condition(binary)?;
        let finding = match is_minimal_exhaustive(binary) {
            Ok(Minimality::Yes) => MinimalFinding::YesExhaustive,
            Ok(Minimality::No { smaller, larger }) => MinimalFinding::No { smaller, larger },
            Err(AnalysisError::TooLarge { .. }) if ab.holds => MinimalFinding::YesAb,
            Err(AnalysisError::TooLarge { .. }) => MinimalFinding::Undecided,
            Err(e) => return Err(e),
        };
        let minimal = matches!(finding, MinimalFinding::YesExhaustive | MinimalFinding::YesAb);
        if ab.holds {
            expect(&mut report, "ab-implies-minimal", true, minimal);
        }
        let predicted_minimal = match variant {
            Some(Variant::T1 | Variant::T3) => true,
            Some(Variant::T2 | Variant::T4) => m_size + 2 <= m,
            Some(Variant::T5) => m_size + n_size + 2 <= 2 * m,
            None => false,
        };
        if predicted_minimal {
            expect(&mut report, "minimal", true, minimal);
        }
        report.ab = Some(ab);
        report.minimal = Some(finding);
    }

    if wants(Analysis::Griesmer) {
        if let Some(d) = params.d {
            let check = griesmer_check(params.n, params.k, d)?;
            if check.status == GriesmerStatus::GriesmerCode {
                expect(&mut report, "griesmer-code-implies-optimal", true, check.status.is_certified_optimal());
            }
            if variant == Some(Variant::T2) {
                if let Ok(theta) = theta_conditions(m, m_size, n_size) {
                    expect(
                        &mut report,
                        "theta-optimality",
                        theta.predicted_optimal,
                        check.status.is_certified_optimal(),
                    );
                    report.theta = Some(theta);
                }
            }
            report.griesmer = Some(check);
        }
    }

    if wants(Analysis::Simplex) {
        let status = match simplex_structure(binary) {
            Ok(SimplexFinding::Replicated { k, r, zero_columns }) => SimplexStatus::Replicated { k, r, zero_columns },
            Ok(SimplexFinding::StructureCheckFailed) => SimplexStatus::OneWeightButStructureCheckFailed,
            Err(AnalysisError::NotOneWeight(_)) => SimplexStatus::NotOneWeight,
            Err(e) => return Err(e),
        };
        if report.num_weights == 1 {
            let replicated = matches!(status, SimplexStatus::Replicated { .. });
            expect(&mut report, "one-weight-is-replicated-simplex", true, replicated);
        }
        report.simplex = Some(status);
    }

    Ok(report)
}

/// Outcome of sweeping `verify_against_prediction` over many parameter sets.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub checked: usize,
    pub matched: usize,
    pub mismatched: usize,
    pub empty_defining_sets: usize,
    pub mismatches: Vec<PredictionCheck>,
    /// Set when the sweep stopped early; counts cover the work done so far.
    pub aborted: Option<String>,
}

impl SweepSummary {
    pub fn all_matched(&self) -> bool {
        self.mismatched == 0 && self.aborted.is_none()
    }
}

/// Every `(M, N)` pair of subsets of `[m]`, or `sample` of them drawn
/// without replacement with a fixed seed.
pub fn subset_pairs(m: u8, sample: Option<usize>, seed: u64) -> Vec<(BitVector, BitVector)> {
    let side = full_mask(m) as usize + 1;
    let total = side * side;
    let indices: Vec<usize> = match sample {
        Some(count) if count < total => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ m as u64);
            let mut picked = index::sample(&mut rng, total, count).into_vec();
            picked.sort_unstable();
            picked
        }
        _ => (0..total).collect(),
    };
    indices
        .into_iter()
        .map(|i| {
            let ms = BitVector::new(m, (i / side) as u32).expect("within dimension");
            let ns = BitVector::new(m, (i % side) as u32).expect("within dimension");
            (ms, ns)
        })
        .collect()
}

pub fn verify_sweep(
    dimensions: &[u8],
    variants: &[Variant],
    sample: Option<usize>,
    seed: u64,
    budget: WorkBudget,
) -> SweepSummary {
    let mut summary = SweepSummary::default();
    for &m in dimensions {
        for &variant in variants {
            for (ms, ns) in subset_pairs(m, sample, seed) {
                let spec = match DefiningSetSpec::simplicial(variant, m, ms, ns) {
                    Ok(spec) => spec,
                    Err(e) => {
                        summary.aborted = Some(e.to_string());
                        return summary;
                    }
                };
                match verify_against_prediction(&spec, budget) {
                    Ok(check) => {
                        summary.checked += 1;
                        if check.empty_defining_set {
                            summary.empty_defining_sets += 1;
                        }
                        if check.matched() {
                            summary.matched += 1;
                        } else {
                            summary.mismatched += 1;
                            summary.mismatches.push(check);
                        }
                    }
                    Err(e) => {
                        summary.aborted = Some(format!("{spec}: {e}"));
                        return summary;
                    }
                }
            }
        }
    }
    summary
}

#[cfg(test)]
mod tests {
    use super::*;

    fn words(rows: &[&str]) -> BinaryCode {
        let len = rows[0].len();
        let w = rows.iter().map(|r| PackedBits::from_bools(r.chars().map(|c| c == '1'))).collect();
        BinaryCode::from_codewords(len, w).unwrap()
    }

    fn profile(pairs: &[(u64, u64)]) -> BTreeMap<u64, u64> {
        pairs.iter().copied().collect()
    }

    #[test]
    fn predicted_rows() {
        let t2 = predicted_distribution(Variant::T2, 5, 3, 1);
        assert_eq!(t2.profile(), profile(&[(64, 96), (48, 896), (0, 32)]));
        assert_eq!(t2.profile().values().sum::<u64>(), 1 << 10);
        assert_eq!(t2.binary.to_string(), "[96, 5, 48]");

        let t1 = predicted_distribution(Variant::T1, 3, 0, 0);
        assert_eq!(t1.profile(), profile(&[(0, 64)]));
        assert!(t1.is_degenerate());

        let t5 = predicted_distribution(Variant::T5, 4, 3, 3);
        assert_eq!(t5.profile(), profile(&[(256, 16), (192, 224), (0, 16)]));
        assert_eq!(t5.codeword_distribution(), profile(&[(256, 1), (192, 14), (0, 1)]));
    }

    #[test]
    fn self_orthogonality_examples() {
        assert!(is_self_orthogonal(&words(&["00", "11"])).holds());
        assert_eq!(
            is_self_orthogonal(&words(&["000", "111"])),
            SelfOrthogonality::No { left: "111".into(), right: "111".into() }
        );
        assert!(is_self_orthogonal(&words(&["0000"])).holds());
        assert!(!weights_divisible_by_4(&words(&["000", "111"])));
    }

    #[test]
    fn minimality_examples() {
        let code = words(&["0000", "1100", "0011", "1111"]);
        assert_eq!(
            is_minimal_exhaustive(&code).unwrap(),
            Minimality::No { smaller: "1100".into(), larger: "1111".into() }
        );
        let simplex = words(&["000", "110", "011", "101"]);
        assert!(is_minimal_exhaustive(&simplex).unwrap().holds());
    }

    #[test]
    fn ab_examples() {
        let simplex = words(&["000", "110", "011", "101"]);
        let ab = ab_condition(&simplex).unwrap();
        assert!(ab.holds);
        assert_eq!(ab.ratio(), 1.0);
        assert_eq!(ab_condition(&words(&["00"])), Err(AnalysisError::ZeroCode));
        // weights 2 and 4: ratio exactly 1/2 does not satisfy the strict inequality
        let half = words(&["0000", "1100", "0011", "1111"]);
        assert!(!ab_condition(&half).unwrap().holds);
    }

    #[test]
    fn griesmer_examples() {
        let g = griesmer_check(96, 5, 48).unwrap();
        assert_eq!((g.sum_at_d, g.sum_at_d_plus_1, g.status), (93, 98, GriesmerStatus::CertifiedOptimal));
        let g = griesmer_check(3072, 9, 1536).unwrap();
        assert_eq!(g.status, GriesmerStatus::CertifiedOptimal);
        let g = griesmer_check(7, 3, 4).unwrap();
        assert_eq!((g.sum_at_d, g.status), (7, GriesmerStatus::GriesmerCode));
        assert!(g.status.is_certified_optimal());
        assert_eq!(griesmer_check(5, 3, 4).unwrap().status, GriesmerStatus::InfeasibleParameters);
        assert!(griesmer_check(5, 0, 4).is_err());
    }

    #[test]
    fn theta_examples() {
        let t = theta_conditions(5, 3, 1).unwrap();
        assert_eq!((t.case, t.value, t.predicted_optimal), (ThetaCase::Theta1, 3, true));
        // 2^{9+1-9} * (2^2 - 1); the Griesmer sum at d is 3072 - 6 = 3066
        let t = theta_conditions(9, 7, 2).unwrap();
        assert_eq!((t.case, t.value, t.predicted_optimal), (ThetaCase::Theta2, 6, true));
        assert_eq!(griesmer_check(3072, 9, 1536).unwrap().sum_at_d, 3066);
        let t = theta_conditions(5, 3, 2).unwrap();
        assert_eq!((t.case, t.value, t.predicted_optimal), (ThetaCase::Theta2, 6, false));
        assert_eq!(griesmer_check(192, 5, 96).unwrap().status, GriesmerStatus::Inconclusive);
        assert!(theta_conditions(4, 0, 0).is_err());
        assert!(theta_conditions(3, 3, 3).is_err());
        assert!(matches!(theta_conditions(1, 0, 1), Err(AnalysisError::ThetaNotApplicable { .. })));
        assert!(matches!(theta_conditions(4, 4, 1), Err(AnalysisError::ThetaNotApplicable { .. })));
    }

    #[test]
    fn simplex_examples() {
        let simplex = words(&["0000000", "1010101", "0110011", "1100110", "0001111", "1011010", "0111100", "1101001"]);
        assert_eq!(simplex_structure(&simplex).unwrap(), SimplexFinding::Replicated { k: 3, r: 1, zero_columns: 0 });
        let two_weight = words(&["0000", "1100", "0011", "1111"]);
        assert_eq!(simplex_structure(&two_weight), Err(AnalysisError::NotOneWeight(2)));
    }

    #[test]
    fn sample_is_deterministic_and_distinct() {
        let a = subset_pairs(5, Some(20), 7);
        assert_eq!(a.len(), 20);
        assert_eq!(a, subset_pairs(5, Some(20), 7));
        let mut dedup = a.clone();
        dedup.dedup();
        assert_eq!(dedup.len(), 20);
        assert_eq!(subset_pairs(2, None, 0).len(), 16);
    }

    #[test]
    fn analysis_names_parse() {
        for a in Analysis::ALL {
            assert_eq!(a.name().parse::<Analysis>().unwrap(), a);
        }
        assert!("nope".parse::<Analysis>().is_err());
    }
}
