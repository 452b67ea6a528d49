//! The verification suite: eleven named checks, a parallel runner and
//! JSON / markdown reports.

mod checks;
pub mod grid;

use std::fmt::Write as _;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::norms::{conjugate, ConjugateExponent};

/// Environment variable capping the runner's worker threads (`0` = automatic).
pub const THREADS_ENV: &str = "CESARO_SPACES_THREADS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Budget {
    Small,
    Full,
}

impl FromStr for Budget {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "small" => Ok(Budget::Small),
            "full" => Ok(Budget::Full),
            _ => Err(Error::Parse(format!("budget must be `small` or `full`, got `{s}`"))),
        }
    }
}

/// Sizes derived from a [`Budget`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    /// Truncation length for the Hardy check.
    pub hardy_n: usize,
    /// Random finite vectors in the Hardy check.
    pub hardy_vectors: usize,
    /// Random symbolic families in the Hardy check.
    pub hardy_families: usize,
    /// Largest basis index in the basis-vector checks.
    pub basis_max_n: u64,
    /// Random families appended to the classification grid.
    pub random_families: usize,
    /// Prefix length for norm enclosures in grid checks.
    pub norm_n: u64,
}

impl Budget {
    pub fn limits(self) -> Limits {
        match self {
            Budget::Small => Limits {
                hardy_n: 10_000,
                hardy_vectors: 50,
                hardy_families: 60,
                basis_max_n: 1_000,
                random_families: 40,
                norm_n: 1024,
            },
            Budget::Full => Limits {
                hardy_n: 100_000,
                hardy_vectors: 50,
                hardy_families: 70,
                basis_max_n: 10_000,
                random_families: 200,
                norm_n: 4096,
            },
        }
    }
}

pub type ConjugateFn = fn(f64) -> Result<ConjugateExponent>;

#[derive(Debug, Clone, Copy)]
pub struct VerifyConfig {
    pub budget: Budget,
    pub seed: u64,
    /// Record wall-clock time per check. Off by default so reports are reproducible.
    pub timing: bool,
    /// Conjugate exponent used by the Hardy check; replaceable for fault injection.
    pub conjugate: ConjugateFn,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self { budget: Budget::Full, seed: 0x5EED, timing: false, conjugate }
    }
}

impl VerifyConfig {
    pub fn limits(&self) -> Limits {
        self.budget.limits()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skip,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub id: String,
    pub name: String,
    /// The statement the check exercises.
    #[serde(rename = "paper_ref")]
    pub statement: String,
    pub status: CheckStatus,
    pub evidence: Value,
    pub runtime_ms: Option<u64>,
}

#[derive(Debug, Clone, Copy)]
pub struct CheckInfo {
    pub id: &'static str,
    pub name: &'static str,
    pub statement: &'static str,
    run: fn(&VerifyConfig) -> (CheckStatus, Value),
}

pub static CHECKS: [CheckInfo; 11] = [
    CheckInfo {
        id: "V1",
        name: "hardy",
        statement: "Hardy's inequality ‖C|x|‖_p ≤ p′‖x‖_p for 1 < p < ∞",
        run: checks::hardy,
    },
    CheckInfo {
        id: "V2",
        name: "coordinate-bounds",
        statement: "|x_n| ≤ n‖x‖_ces(p) and |x_n| ≤ ‖x‖_d(p)",
        run: checks::coordinate_bounds,
    },
    CheckInfo {
        id: "V3",
        name: "dnorm-basis-exact",
        statement: "‖e_n‖_d(p) = n^(1/p)",
        run: checks::dnorm_basis_exact,
    },
    CheckInfo {
        id: "V4",
        name: "cesnorm-basis-asymptotic",
        statement: "A_q n^(-1/q′) ≤ ‖e_n‖_ces(q) ≤ B_q n^(-1/q′) for constants 0 < A_q ≤ B_q",
        run: checks::cesnorm_basis_asymptotic,
    },
    CheckInfo {
        id: "V5",
        name: "bennett-base",
        statement: "C²|x| ∈ X ⇔ C|x| ∈ X for X = ℓ_p, ces(p), d(p)",
        run: checks::bennett_base,
    },
    CheckInfo {
        id: "V6",
        name: "bennett-graded",
        statement: "C²|x| ∈ X ⇔ C|x| ∈ X for the p+ and p- grades of ℓ, ces and d",
        run: checks::bennett_graded,
    },
    CheckInfo {
        id: "V7",
        name: "solid-core",
        statement: "C|x| ∈ ℓ at a grade ⇔ C|x| ∈ d at that grade ⇔ x ∈ ces at that grade",
        run: checks::solid_core,
    },
    CheckInfo {
        id: "V8",
        name: "inclusion-lattice",
        statement: "d(p) ⊆ ℓ_q ⊆ ces(r) for p ≤ q ≤ r, monotone in the exponent at every grade, with every proper inclusion witnessed",
        run: checks::inclusion_lattice,
    },
    CheckInfo {
        id: "V9",
        name: "basis-behavior",
        statement: "{e_n} is unbounded in every d(p_k) while e_n → 0 in ces(q)",
        run: checks::basis_behavior,
    },
    CheckInfo {
        id: "V10",
        name: "koethe-grading",
        statement: "the ces(p_k) norms and the weighted ℓ_1 seminorms with weights n^t interleave on basis vectors",
        run: checks::koethe_grading,
    },
    CheckInfo {
        id: "V11",
        name: "cesaro-maps-into",
        statement: "C maps ces(p), ces(p+) and ces(p-) into d(p), d(p+) and d(p-)",
        run: checks::cesaro_maps_into,
    },
];

/// Resolves `V7`, `v7` or `solid-core`.
pub fn find_check(id: &str) -> Result<&'static CheckInfo> {
    CHECKS
        .iter()
        .find(|c| c.id.eq_ignore_ascii_case(id) || c.name.eq_ignore_ascii_case(id))
        .ok_or_else(|| Error::UnknownCheck(id.to_string()))
}

fn execute(info: &CheckInfo, config: &VerifyConfig) -> CheckResult {
    let start = Instant::now();
    let (status, evidence) = (info.run)(config);
    CheckResult {
        id: info.id.to_string(),
        name: info.name.to_string(),
        statement: info.statement.to_string(),
        status,
        evidence,
        runtime_ms: config.timing.then(|| start.elapsed().as_millis() as u64),
    }
}

/// Runs one check by id or name.
pub fn run_check(id: &str, config: &VerifyConfig) -> Result<CheckResult> {
    Ok(execute(find_check(id)?, config))
}

fn thread_cap() -> usize {
    std::env::var(THREADS_ENV).ok().and_then(|v| v.trim().parse().ok()).unwrap_or(0)
}

/// Runs every check, possibly in parallel; results are in catalog order.
pub fn run_all(config: &VerifyConfig) -> Vec<CheckResult> {
    let go = || CHECKS.par_iter().map(|c| execute(c, config)).collect::<Vec<_>>();
    match rayon::ThreadPoolBuilder::new().num_threads(thread_cap()).build() {
        Ok(pool) => pool.install(go),
        Err(_) => go(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportFormat {
    Json,
    Markdown,
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(ReportFormat::Json),
            "markdown" | "md" => Ok(ReportFormat::Markdown),
            _ => Err(Error::UnknownFormat(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportConfig {
    pub budget: Budget,
    #[serde(flatten)]
    pub limits: Limits,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub version: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub config: Option<ReportConfig>,
    pub checks: Vec<CheckResult>,
}

impl Report {
    /// Results only, with no run metadata.
    pub fn bare(checks: Vec<CheckResult>) -> Self {
        Self { version: None, seed: None, config: None, checks }
    }

    pub fn new(config: &VerifyConfig, checks: Vec<CheckResult>) -> Self {
        Self {
            version: Some(env!("CARGO_PKG_VERSION").to_string()),
            seed: Some(config.seed),
            config: Some(ReportConfig { budget: config.budget, limits: config.limits() }),
            checks,
        }
    }

    pub fn any_failed(&self) -> bool {
        self.checks.iter().any(|c| c.status == CheckStatus::Fail)
    }
}

fn one_line(v: &Value) -> String {
    let s = match v.get("summary").or_else(|| v.get("reason")) {
        Some(Value::String(s)) => s.clone(),
        _ => String::new(),
    };
    s.replace('|', "\\|")
}

pub fn render_report(report: &Report, format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => serde_json::to_string_pretty(report).expect("report serializes"),
        ReportFormat::Markdown => {
            let mut out = String::from("# Verification report\n\n");
            if let Some(v) = &report.version {
                let _ = writeln!(out, "- version: {v}");
            }
            if let Some(s) = report.seed {
                let _ = writeln!(out, "- seed: {s}");
            }
            if let Some(c) = &report.config {
                let _ = writeln!(out, "- budget: {}", serde_json::to_string(&c.budget).unwrap_or_default().trim_matches('"'));
            }
            out.push_str("\n| id | check | status | statement | summary |\n|---|---|---|---|---|\n");
            for c in &report.checks {
                let status = match c.status {
                    CheckStatus::Pass => "PASS",
                    CheckStatus::Fail => "FAIL",
                    CheckStatus::Skip => "SKIP",
                };
                let statement = c.statement.replace('|', "\\|");
                let _ = writeln!(out, "| {} | {} | {status} | {statement} | {} |", c.id, c.name, one_line(&c.evidence));
            }
            out
        }
    }
}
