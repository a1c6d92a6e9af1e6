//! Command-line front end. [`execute`] parses arguments, writes everything to
//! the supplied writer and returns the process exit code:
//! 0 success, 1 mismatch with a closed-form prediction, 2 usage error,
//! 3 work budget exceeded.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::code_analysis::{
    analyze, construct_instance, verify_sweep, Analysis, AnalysisError, AnalysisReport, CodeInstance, MinimalFinding,
    SimplexStatus,
};
use crate::code_construction::{ConstructionError, DefiningSetSpec, Variant, WorkBudget};
use crate::ring_i::{addition_table, multiplication_table, render_table};

pub const SCHEMA_VERSION: u32 = 1;

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "ringcodes", version, about = "Codes over the non-unital ring I from simplicial complexes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Text,
    /// A single JSON document.
    Structured,
}

#[derive(Debug, Args)]
pub struct CodeArgs {
    /// T1..T5
    #[arg(long)]
    pub variant: String,
    /// Ambient dimension.
    #[arg(long = "m")]
    pub m: u8,
    /// Generator M as comma separated 1-based indices; "" is the empty set.
    #[arg(long = "M", default_value = "", allow_hyphen_values = true)]
    pub m_set: String,
    /// Generator N, same form as M.
    #[arg(long = "N", default_value = "", allow_hyphen_values = true)]
    pub n_set: String,
    /// Work budget override (parity evaluations).
    #[arg(long)]
    pub budget: Option<u128>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a code and print its Lee weight enumerator and Gray image parameters.
    Construct {
        #[command(flatten)]
        code: CodeArgs,
        /// Print every codeword over {0,a,b,c}.
        #[arg(long)]
        dump_codewords: bool,
        /// Print every Gray image codeword over {0,1}.
        #[arg(long)]
        dump_binary: bool,
    },
    /// Certify minimality, self-orthogonality, optimality and simplex structure.
    Analyze {
        #[command(flatten)]
        code: CodeArgs,
        /// Comma separated subset of weights,gray,minimal,self-orthogonal,griesmer,simplex,verify.
        #[arg(long, default_value = "weights,gray,minimal,self-orthogonal,griesmer,simplex,verify")]
        analyses: String,
    },
    /// Compare enumerated Lee distributions with the closed forms over all (M, N).
    Verify {
        /// Dimension or inclusive range, e.g. "4" or "1..4".
        #[arg(long = "m")]
        m: String,
        #[arg(long, default_value = "T1,T2,T3,T4,T5")]
        variants: String,
        /// Check this many random (M, N) pairs per dimension and variant.
        #[arg(long)]
        sample: Option<usize>,
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
        #[arg(long)]
        budget: Option<u128>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print the addition and multiplication tables of I.
    Tables,
    /// Run the jobs of an experiment config file (TOML, or JSON by extension).
    Run {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
}

#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl ToString) -> Self {
        Failure { code: EXIT_USAGE, message: message.to_string() }
    }
}

impl From<ConstructionError> for Failure {
    fn from(e: ConstructionError) -> Self {
        let code = match e {
            ConstructionError::BudgetExceeded { .. } => EXIT_BUDGET,
            ConstructionError::Geometry(_)
            | ConstructionError::UnknownVariant(_)
            | ConstructionError::DimensionMismatch { .. } => EXIT_USAGE,
            _ => EXIT_MISMATCH,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<AnalysisError> for Failure {
    fn from(e: AnalysisError) -> Self {
        match e {
            AnalysisError::Construction(inner) => inner.into(),
            AnalysisError::UnknownAnalysis(_) => Failure::usage(e),
            other => Failure { code: EXIT_MISMATCH, message: other.to_string() },
        }
    }
}

/// Budget from the flag, else `RINGCODES_WORK_BUDGET`, else the default.
fn resolve_budget(flag: Option<u128>) -> Result<WorkBudget, Failure> {
    match flag {
        Some(0) => Err(Failure::usage("budget must be positive")),
        Some(v) => Ok(WorkBudget(v)),
        None => WorkBudget::from_env().map_err(Failure::usage),
    }
}

fn spec_from(variant: &str, m: u8, m_set: &str, n_set: &str) -> Result<DefiningSetSpec, Failure> {
    let variant: Variant = variant.parse().map_err(Failure::usage)?;
    DefiningSetSpec::parse(variant, m, m_set, n_set).map_err(Failure::usage)
}

fn parse_analyses(text: &str) -> Result<Vec<Analysis>, Failure> {
    let list = text
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.parse::<Analysis>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(Failure::usage)?;
    if list.is_empty() {
        return Err(Failure::usage("no analyses requested"));
    }
    Ok(list)
}

fn parse_variants(text: &str) -> Result<Vec<Variant>, Failure> {
    let list = text
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.parse::<Variant>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(Failure::usage)?;
    if list.is_empty() {
        return Err(Failure::usage("empty variant list"));
    }
    Ok(list)
}

/// "4", "1..4" (inclusive) or "2,5".
pub fn parse_dimensions(text: &str) -> Result<Vec<u8>, String> {
    let parse = |s: &str| s.trim().parse::<u8>().map_err(|e| format!("bad dimension {s:?}: {e}"));
    let dims: Vec<u8> = if let Some((lo, hi)) = text.split_once("..") {
        let (lo, hi) = (parse(lo)?, parse(hi.trim_start_matches('='))?);
        if lo > hi {
            return Err(format!("empty range {text:?}"));
        }
        (lo..=hi).collect()
    } else {
        text.split(',').map(parse).collect::<Result<_, _>>()?
    };
    match dims.iter().find(|&&m| m == 0 || m > 24) {
        Some(bad) => Err(format!("dimension {bad} outside 1..=24")),
        None if dims.is_empty() => Err("no dimensions".to_string()),
        None => Ok(dims),
    }
}

fn to_json(value: &impl Serialize) -> String {
    serde_json::to_string_pretty(value).expect("report serializes") + "\n"
}

fn construct(code: &CodeArgs, dump_codewords: bool, dump_binary: bool) -> Result<(i32, String), Failure> {
    let spec = spec_from(&code.variant, code.m, &code.m_set, &code.n_set)?;
    let budget = resolve_budget(code.budget)?;
    let instance = construct_instance(&spec, budget)?;
    let mut text = String::new();
    let doc = match &instance {
        CodeInstance::EmptyDefiningSet { .. } => {
            writeln!(text, "spec: {spec}").unwrap();
            writeln!(text, "defining set: |D| = 0").unwrap();
            writeln!(text, "degenerate: empty defining set").unwrap();
            json!({
                "schema_version": SCHEMA_VERSION,
                "command": "construct",
                "spec": spec.to_string(),
                "defining_set_length": 0,
                "degenerate": "empty defining set",
            })
        }
        CodeInstance::Built { ring, binary, params, .. } => {
            let degenerate = params.is_degenerate().then_some("zero code");
            writeln!(text, "spec: {spec}").unwrap();
            writeln!(text, "defining set: |D| = {}", ring.length()).unwrap();
            writeln!(text, "code over I: size {}, kernel {}", ring.size(), ring.kernel_size()).unwrap();
            writeln!(text, "Lee weight enumerator: {}", ring.enumerator()).unwrap();
            writeln!(text, "Gray image: {params}").unwrap();
            if let Some(reason) = degenerate {
                writeln!(text, "degenerate: {reason}").unwrap();
            }
            if dump_codewords {
                writeln!(text, "codewords:").unwrap();
                text.push_str(&ring.dump());
            }
            if dump_binary {
                writeln!(text, "binary codewords:").unwrap();
                text.push_str(&binary.dump());
            }
            let mut doc = json!({
                "schema_version": SCHEMA_VERSION,
                "command": "construct",
                "spec": spec.to_string(),
                "defining_set_length": ring.length(),
                "code_size": ring.size(),
                "kernel_size": ring.kernel_size(),
                "lee_enumerator": ring.enumerator(),
                "lee_weight_distribution": ring.weight_distribution(),
                "message_profile": ring.message_profile(),
                "gray_params": params,
                "degenerate": degenerate,
            });
            if dump_codewords {
                doc["codewords"] = json!(ring.codewords().iter().map(|w| w.to_string()).collect::<Vec<_>>());
            }
            if dump_binary {
                doc["binary_codewords"] = json!(binary.codewords().iter().map(|w| w.to_string()).collect::<Vec<_>>());
            }
            doc
        }
    };
    Ok((EXIT_OK, if code.format == Format::Structured { to_json(&doc) } else { text }))
}

fn yes_no(flag: bool) -> &'static str {
    if flag {
        "yes"
    } else {
        "no"
    }
}

fn minimal_cell(report: &AnalysisReport) -> String {
    match &report.minimal {
        Some(MinimalFinding::YesExhaustive) => "yes (exhaustive)".into(),
        Some(MinimalFinding::YesAb) => "yes (Ashikhmin-Barg)".into(),
        Some(MinimalFinding::No { smaller, larger }) => format!("no ({smaller} under {larger})"),
        Some(MinimalFinding::Undecided) => "undecided".into(),
        None => "-".into(),
    }
}

/// Rows in the layout `spec | [n,k,d] | #weights | distance optimal | minimal`.
pub fn render_summary_table(reports: &[AnalysisReport]) -> String {
    let header = ["code", "[n,k,d]", "#weight", "distance optimal", "minimal"];
    let rows: Vec<[String; 5]> = reports
        .iter()
        .map(|r| {
            [
                r.spec.clone(),
                r.params.map(|p| p.to_string()).unwrap_or_else(|| "-".into()),
                if r.degenerate.is_some() { "-".into() } else { r.num_weights.to_string() },
                r.optimality().map(|s| s.to_string()).unwrap_or_else(|| "-".into()),
                minimal_cell(r),
            ]
        })
        .collect();
    let mut widths = header.map(str::len);
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        cells.iter().zip(widths).map(|(c, w)| format!("{c:<w$}")).collect::<Vec<_>>().join(" | ").trim_end().to_string()
            + "\n"
    };
    let mut out = line(header.to_vec());
    out.push_str(&(widths.iter().map(|&w| "-".repeat(w)).collect::<Vec<_>>().join("-+-") + "\n"));
    for row in &rows {
        out.push_str(&line(row.iter().map(String::as_str).collect()));
    }
    out
}

fn render_report(report: &AnalysisReport) -> String {
    let mut t = String::new();
    writeln!(t, "spec: {}", report.spec).unwrap();
    writeln!(t, "defining set: |D| = {}", report.defining_set_length).unwrap();
    if let Some(reason) = &report.degenerate {
        writeln!(t, "degenerate: {reason}").unwrap();
    }
    if let Some(e) = &report.lee_enumerator {
        writeln!(t, "Lee weight enumerator: {e}").unwrap();
    }
    if let Some(p) = report.params {
        writeln!(t, "Gray image: {p} ({}-weight)", report.num_weights).unwrap();
    }
    if let Some(check) = &report.prediction {
        writeln!(t, "closed-form distribution: {}", if check.matched() { "match" } else { "MISMATCH" }).unwrap();
    }
    if report.minimal.is_some() {
        writeln!(t, "minimal: {}", minimal_cell(report)).unwrap();
    }
    if let Some(ab) = report.ab {
        writeln!(
            t,
            "Ashikhmin-Barg: wt0/wtinf = {}/{} {} 1/2",
            ab.min_weight,
            ab.max_weight,
            if ab.holds { ">" } else { "<=" }
        )
        .unwrap();
    }
    if let Some(so) = &report.self_orthogonal {
        writeln!(t, "self-orthogonal: {}", yes_no(so.holds())).unwrap();
    }
    if let Some(div4) = report.weights_div4 {
        writeln!(t, "weights divisible by 4: {}", yes_no(div4)).unwrap();
    }
    if let Some(g) = report.griesmer {
        writeln!(
            t,
            "Griesmer: sum at d = {}, sum at d+1 = {}, n = {} -> {}",
            g.sum_at_d, g.sum_at_d_plus_1, g.n, g.status
        )
        .unwrap();
    }
    if let Some(theta) = report.theta {
        writeln!(
            t,
            "theta: {:?} = {} -> predicted optimal: {}",
            theta.case,
            theta.value,
            yes_no(theta.predicted_optimal)
        )
        .unwrap();
    }
    match &report.simplex {
        Some(SimplexStatus::Replicated { k, r, zero_columns }) => {
            writeln!(t, "simplex: {r}-fold simplex of dimension {k} with {zero_columns} zero columns").unwrap()
        }
        Some(SimplexStatus::NotOneWeight) => writeln!(t, "simplex: not one-weight").unwrap(),
        Some(SimplexStatus::OneWeightButStructureCheckFailed) => {
            writeln!(t, "simplex: one-weight but structure check failed").unwrap()
        }
        None => {}
    }
    for e in report.failed_expectations() {
        writeln!(t, "expectation failed: {}: expected {}, observed {}", e.check, e.expected, e.observed).unwrap();
    }
    t.push('\n');
    t.push_str(&render_summary_table(std::slice::from_ref(report)));
    t
}

fn report_exit(report: &AnalysisReport) -> i32 {
    if report.all_expectations_met() {
        EXIT_OK
    } else {
        EXIT_MISMATCH
    }
}

fn analyze_cmd(code: &CodeArgs, analyses: &str) -> Result<(i32, String), Failure> {
    let spec = spec_from(&code.variant, code.m, &code.m_set, &code.n_set)?;
    let analyses = parse_analyses(analyses)?;
    let budget = resolve_budget(code.budget)?;
    let report = analyze(&spec, &analyses, budget)?;
    let out = match code.format {
        Format::Text => render_report(&report),
        Format::Structured => to_json(&json!({
            "schema_version": SCHEMA_VERSION,
            "command": "analyze",
            "report": report,
        })),
    };
    Ok((report_exit(&report), out))
}

fn verify_cmd(
    m: &str,
    variants: &str,
    sample: Option<usize>,
    seed: u64,
    budget: Option<u128>,
    format: Format,
) -> Result<(i32, String), Failure> {
    let dims = parse_dimensions(m).map_err(Failure::usage)?;
    let variants = parse_variants(variants)?;
    let budget = resolve_budget(budget)?;
    let summary = verify_sweep(&dims, &variants, sample, seed, budget);
    let code = if summary.aborted.is_some() {
        EXIT_BUDGET
    } else if summary.mismatched > 0 {
        EXIT_MISMATCH
    } else {
        EXIT_OK
    };
    let out = match format {
        Format::Structured => to_json(&json!({
            "schema_version": SCHEMA_VERSION,
            "command": "verify",
            "dimensions": dims,
            "variants": variants,
            "summary": summary,
        })),
        Format::Text => {
            let mut t = String::new();
            writeln!(
                t,
                "checked {} (M, N) instances: {} match, {} mismatch ({} with empty defining set)",
                summary.checked, summary.matched, summary.mismatched, summary.empty_defining_sets
            )
            .unwrap();
            for c in &summary.mismatches {
                writeln!(t, "mismatch: {} m={} M={:?} N={:?}", c.variant, c.m, c.m_set, c.n_set).unwrap();
                for d in &c.mismatches {
                    writeln!(t, "  weight {}: predicted {}, observed {}", d.lee_weight, d.predicted, d.observed)
                        .unwrap();
                }
            }
            if let Some(reason) = &summary.aborted {
                writeln!(t, "aborted: {reason}").unwrap();
            }
            t
        }
    };
    Ok((code, out))
}

fn tables_text() -> String {
    format!("{}\n{}", render_table('+', &addition_table()), render_table('*', &multiplication_table()))
}

/// Subset given either as "1,2" or as `[1, 2]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SubsetField {
    Text(String),
    Indices(Vec<usize>),
}

impl Default for SubsetField {
    fn default() -> Self {
        SubsetField::Text(String::new())
    }
}

impl SubsetField {
    fn as_text(&self) -> String {
        match self {
            SubsetField::Text(t) => t.clone(),
            SubsetField::Indices(v) => v.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(","),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JobConfig {
    pub variant: String,
    pub m: u8,
    #[serde(rename = "M", default)]
    pub m_set: SubsetField,
    #[serde(rename = "N", default)]
    pub n_set: SubsetField,
    #[serde(default)]
    pub analyses: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    #[serde(default)]
    pub format: Format,
    #[serde(default)]
    pub budget: Option<u64>,
    pub jobs: Vec<JobConfig>,
}

impl ExperimentConfig {
    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        let is_json = path.extension().is_some_and(|ext| ext.eq_ignore_ascii_case("json"));
        let config: ExperimentConfig = if is_json {
            serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?
        } else {
            toml::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?
        };
        if config.budget == Some(0) {
            return Err("budget must be positive".into());
        }
        Ok(config)
    }

    /// Resolved specs and analysis lists, validating every job up front.
    fn resolve(&self) -> Result<Vec<(DefiningSetSpec, Vec<Analysis>)>, Failure> {
        self.jobs
            .iter()
            .map(|job| {
                let spec = spec_from(&job.variant, job.m, &job.m_set.as_text(), &job.n_set.as_text())?;
                let analyses = match &job.analyses {
                    Some(list) => parse_analyses(&list.join(","))?,
                    None => Analysis::ALL.to_vec(),
                };
                Ok((spec, analyses))
            })
            .collect()
    }
}

fn run_cmd(config_path: &Path, format: Option<Format>) -> Result<(i32, String), Failure> {
    let config = ExperimentConfig::load(config_path).map_err(Failure::usage)?;
    let jobs = config.resolve()?;
    let budget = resolve_budget(config.budget.map(u128::from))?;
    let format = format.unwrap_or(config.format);
    let mut reports = Vec::new();
    let mut code = EXIT_OK;
    for (spec, analyses) in &jobs {
        let report = analyze(spec, analyses, budget)?;
        code = code.max(report_exit(&report));
        reports.push(report);
    }
    let out = match format {
        Format::Structured => to_json(&json!({
            "schema_version": SCHEMA_VERSION,
            "command": "run",
            "jobs": reports,
        })),
        Format::Text => {
            let mut t: String = reports.iter().map(render_report).collect::<Vec<_>>().join("\n");
            t.push('\n');
            t.push_str(&render_summary_table(&reports));
            t
        }
    };
    Ok((code, out))
}

fn dispatch(command: &Command) -> Result<(i32, String), Failure> {
    match command {
        Command::Construct { code, dump_codewords, dump_binary } => construct(code, *dump_codewords, *dump_binary),
        Command::Analyze { code, analyses } => analyze_cmd(code, analyses),
        Command::Verify { m, variants, sample, seed, budget, format } => {
            verify_cmd(m, variants, *sample, *seed, *budget, *format)
        }
        Command::Tables => Ok((EXIT_OK, tables_text())),
        Command::Run { config, format } => run_cmd(config, *format),
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn execute<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match dispatch(&cli.command) {
        Ok((code, text)) => {
            let _ = out.write_all(text.as_bytes());
            code
        }
        Err(failure) => {
            let _ = writeln!(err, "error: {}", failure.message);
            failure.code
        }
    }
}
