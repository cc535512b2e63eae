//! Verification suites for the `U(p)`, `SU(p)` and Aguadé–Zabrodsky cases:
//! explicit matrices, their relations, the normalizer extensions and their
//! splittings, automorphism counts, and the decomposition diagrams.

mod az;
mod checks;
mod decomposition;
mod model;
mod normalizers;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::fingroup::{AutError, SesError};
use crate::fusion::FusionError;
use crate::matgroup::{MatError, DEFAULT_CAP};

pub use az::{aut_gamma, aut_gamma_summary, expected_aut_order, verify_az, AutGammaSummary, AzData};
pub use checks::{verify_gamma, verify_rho, verify_tau};
pub use decomposition::{emit_decomposition, encoded_poset, torus_characteristic, Decomposition};
pub use model::GammaModel;
pub use normalizers::{build_normalizers, builtin_group, BuiltinGroup, Normalizers};

#[derive(Debug, Error)]
pub enum CaseError {
    #[error("prime {0} is not supported (expected 2, 3, 5 or 7)")]
    UnsupportedPrime(u32),
    #[error("truncation level must be at least 1")]
    BadLevel,
    #[error("Shephard-Todd index {0} is not one of 12, 29, 31, 34")]
    BadIndex(u32),
    #[error("index {index} belongs to p = {expected}, not p = {got}")]
    IndexMismatch { index: u32, expected: u32, got: u32 },
    #[error("the AZ case needs an index (p = {0} is ambiguous or missing)")]
    MissingIndex(u32),
    #[error("an index is only meaningful for the AZ case")]
    UnexpectedIndex,
    #[error("the {0} case needs a prime")]
    MissingPrime(Case),
    #[error("{what} requires an odd prime")]
    OddOnly { what: &'static str },
    #[error(transparent)]
    Mat(#[from] MatError),
    #[error(transparent)]
    Aut(#[from] AutError),
    #[error(transparent)]
    Ses(#[from] SesError),
    #[error(transparent)]
    Fusion(#[from] FusionError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Case {
    #[serde(rename = "up")]
    Up,
    #[serde(rename = "sup")]
    SUp,
    #[serde(rename = "az")]
    AZ,
}

impl Case {
    pub const ALL: [Case; 3] = [Case::Up, Case::SUp, Case::AZ];

    pub fn name(self) -> &'static str {
        match self {
            Case::Up => "up",
            Case::SUp => "sup",
            Case::AZ => "az",
        }
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Case {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "up" => Ok(Case::Up),
            "sup" => Ok(Case::SUp),
            "az" => Ok(Case::AZ),
            other => Err(format!("unknown case `{other}` (expected up, sup or az)")),
        }
    }
}

/// Shephard–Todd indices of the Aguadé–Zabrodsky groups and their primes.
pub const AZ_INDICES: [(u32, u32); 4] = [(12, 3), (29, 5), (31, 5), (34, 7)];

pub const PRIMES: [u32; 4] = [2, 3, 5, 7];

pub fn az_prime(index: u32) -> Option<u32> {
    AZ_INDICES.iter().find(|&&(i, _)| i == index).map(|&(_, p)| p)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CaseConfig {
    pub case: Case,
    pub prime: u32,
    pub level: u32,
    pub az_index: Option<u32>,
    /// Closure cap for the matrix normalizer groups.
    #[serde(skip)]
    pub cap: usize,
}

impl CaseConfig {
    /// Validates a selection. For the AZ case the prime may be omitted and
    /// is then read off the index.
    pub fn new(case: Case, prime: Option<u32>, level: u32, az_index: Option<u32>) -> Result<Self, CaseError> {
        if level == 0 {
            return Err(CaseError::BadLevel);
        }
        if let Some(p) = prime {
            if !PRIMES.contains(&p) {
                return Err(CaseError::UnsupportedPrime(p));
            }
        }
        match case {
            Case::AZ => {
                if prime == Some(2) {
                    return Err(CaseError::OddOnly { what: "the AZ case" });
                }
                let index = match (az_index, prime) {
                    (Some(i), _) => i,
                    (None, Some(3)) => 12,
                    (None, Some(7)) => 34,
                    (None, Some(p)) => return Err(CaseError::MissingIndex(p)),
                    (None, None) => return Err(CaseError::MissingIndex(0)),
                };
                let expected = az_prime(index).ok_or(CaseError::BadIndex(index))?;
                if let Some(p) = prime {
                    if p != expected {
                        return Err(CaseError::IndexMismatch { index, expected, got: p });
                    }
                }
                Ok(CaseConfig { case, prime: expected, level, az_index: Some(index), cap: DEFAULT_CAP })
            }
            _ => {
                if az_index.is_some() {
                    return Err(CaseError::UnexpectedIndex);
                }
                let p = prime.ok_or(CaseError::MissingPrime(case))?;
                Ok(CaseConfig { case, prime: p, level, az_index: None, cap: DEFAULT_CAP })
            }
        }
    }

    pub fn with_level(self, level: u32) -> Result<Self, CaseError> {
        Ok(Self { cap: self.cap, ..Self::new(self.case, Some(self.prime), level, self.az_index)? })
    }

    pub fn with_cap(self, cap: usize) -> Self {
        Self { cap, ..self }
    }

    /// Every supported `(case, prime, index)` selection at the given level.
    pub fn matrix(level: u32) -> Vec<CaseConfig> {
        let mut out = Vec::new();
        for case in [Case::Up, Case::SUp] {
            for p in PRIMES {
                out.push(CaseConfig { case, prime: p, level, az_index: None, cap: DEFAULT_CAP });
            }
        }
        for (i, p) in AZ_INDICES {
            out.push(CaseConfig { case: Case::AZ, prime: p, level, az_index: Some(i), cap: DEFAULT_CAP });
        }
        out
    }

    pub fn is_odd(&self) -> bool {
        self.prime % 2 == 1
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub claim_id: String,
    /// The mathematical statement being checked.
    pub anchor: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub witness: String,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub case: Case,
    pub prime: u32,
    pub level: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub az_index: Option<u32>,
    pub checks: Vec<Check>,
    pub summary: Summary,
}

impl VerificationReport {
    pub fn new(cfg: &CaseConfig) -> Self {
        VerificationReport {
            case: cfg.case,
            prime: cfg.prime,
            level: cfg.level,
            az_index: cfg.az_index,
            checks: Vec::new(),
            summary: Summary::default(),
        }
    }

    fn push(&mut self, c: Check) {
        match c.status {
            Status::Pass => self.summary.pass += 1,
            Status::Fail => self.summary.fail += 1,
            Status::Skipped => self.summary.skipped += 1,
        }
        self.checks.push(c);
    }

    pub fn check(&mut self, id: &str, anchor: &str, ok: bool, witness: impl Into<String>) -> bool {
        self.push(Check {
            claim_id: id.into(),
            anchor: anchor.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            reason: None,
            witness: witness.into(),
        });
        ok
    }

    pub fn skip(&mut self, id: &str, anchor: &str, reason: impl Into<String>) {
        self.push(Check {
            claim_id: id.into(),
            anchor: anchor.into(),
            status: Status::Skipped,
            reason: Some(reason.into()),
            witness: String::new(),
        });
    }

    /// Records a computation error as a failed check.
    pub fn error(&mut self, id: &str, anchor: &str, err: &dyn std::error::Error) {
        self.check(id, anchor, false, format!("error: {err}"));
    }

    pub fn extend(&mut self, other: VerificationReport) {
        for c in other.checks {
            self.push(c);
        }
    }

    pub fn all_pass(&self) -> bool {
        self.summary.fail == 0
    }

    pub fn status_of(&self, id: &str) -> Option<Status> {
        self.checks.iter().find(|c| c.claim_id == id).map(|c| c.status)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!(
            "case {} p={} level={}{}\n",
            self.case,
            self.prime,
            self.level,
            self.az_index.map(|i| format!(" index={i}")).unwrap_or_default()
        );
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skipped => "SKIP",
            };
            s.push_str(&format!("  [{tag}] {:<28} {}\n", c.claim_id, c.anchor));
            if let Some(r) = &c.reason {
                s.push_str(&format!("         reason: {r}\n"));
            }
            if !c.witness.is_empty() {
                s.push_str(&format!("         witness: {}\n", c.witness));
            }
        }
        s.push_str(&format!(
            "  summary: {} pass, {} fail, {} skipped\n",
            self.summary.pass, self.summary.fail, self.summary.skipped
        ));
        s
    }
}

/// Runs every suite that applies to `cfg`, in a fixed order. Errors inside a
/// suite become failed checks, so the report is always complete.
pub fn run_suite(cfg: &CaseConfig) -> VerificationReport {
    let mut report = run_suite_inner(cfg);
    if cfg.level == 1 && cfg.prime <= 3 {
        let anchor = "pass/fail status is unchanged at truncation level 2";
        match cfg.with_level(2) {
            Ok(c2) => {
                let r2 = run_suite_inner(&c2);
                let diffs: Vec<String> = report
                    .checks
                    .iter()
                    .filter(|c| r2.status_of(&c.claim_id) != Some(c.status))
                    .map(|c| c.claim_id.clone())
                    .collect();
                report.check(
                    "level.robustness",
                    anchor,
                    diffs.is_empty(),
                    if diffs.is_empty() {
                        format!("{} checks compared", r2.checks.len())
                    } else {
                        format!("changed: {}", diffs.join(", "))
                    },
                );
            }
            Err(e) => report.error("level.robustness", anchor, &e),
        }
    }
    report
}

fn run_suite_inner(cfg: &CaseConfig) -> VerificationReport {
    let mut report = VerificationReport::new(cfg);
    let merge = |report: &mut VerificationReport, r: Result<VerificationReport, CaseError>, id: &str| match r {
        Ok(r) => report.extend(r),
        Err(e) => report.error(id, "suite completed", &e),
    };
    merge(&mut report, verify_gamma(cfg), "gamma");
    if cfg.is_odd() {
        merge(&mut report, verify_tau(cfg), "tau");
        merge(&mut report, verify_rho(cfg), "rho");
    }
    let norm = match build_normalizers(cfg) {
        Ok(n) => n,
        Err(e) => {
            report.error("normalizers", "suite completed", &e);
            return report;
        }
    };
    report.extend(norm.report.clone());
    let az = if cfg.case == Case::AZ {
        match verify_az(cfg) {
            Ok(d) => {
                report.extend(d.report.clone());
                Some(d)
            }
            Err(e) => {
                report.error("az", "suite completed", &e);
                None
            }
        }
    } else {
        None
    };
    match decomposition::assemble(cfg, &norm, az.as_ref()) {
        Ok(d) => report.extend(d.report),
        Err(e) => report.error("decomposition", "suite completed", &e),
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_validation() {
        assert!(CaseConfig::new(Case::SUp, Some(3), 1, None).is_ok());
        assert!(matches!(CaseConfig::new(Case::SUp, Some(11), 1, None), Err(CaseError::UnsupportedPrime(11))));
        assert!(matches!(CaseConfig::new(Case::SUp, Some(3), 0, None), Err(CaseError::BadLevel)));
        assert!(matches!(CaseConfig::new(Case::Up, Some(3), 1, Some(12)), Err(CaseError::UnexpectedIndex)));
        let az = CaseConfig::new(Case::AZ, None, 1, Some(34)).unwrap();
        assert_eq!(az.prime, 7);
        assert!(matches!(CaseConfig::new(Case::AZ, Some(5), 1, None), Err(CaseError::MissingIndex(5))));
        assert!(matches!(
            CaseConfig::new(Case::AZ, Some(3), 1, Some(29)),
            Err(CaseError::IndexMismatch { index: 29, expected: 5, got: 3 })
        ));
        assert!(matches!(CaseConfig::new(Case::AZ, Some(2), 1, Some(12)), Err(CaseError::OddOnly { .. })));
        assert!(matches!(CaseConfig::new(Case::AZ, None, 1, Some(13)), Err(CaseError::BadIndex(13))));
        assert_eq!(CaseConfig::matrix(1).len(), 12);
        assert_eq!("SUP".parse::<Case>().unwrap(), Case::SUp);
    }

    #[test]
    fn report_summary_counts() {
        let cfg = CaseConfig::new(Case::SUp, Some(3), 1, None).unwrap();
        let mut r = VerificationReport::new(&cfg);
        r.check("a", "x", true, "");
        r.check("b", "y", false, "w");
        r.skip("c", "z", "why");
        assert_eq!(r.summary, Summary { pass: 1, fail: 1, skipped: 1 });
        assert!(!r.all_pass());
        assert!(r.to_text().contains("[SKIP]"));
        let j = serde_json::to_value(&r).unwrap();
        assert_eq!(j["checks"][2]["status"], "skipped");
        assert_eq!(j["case"], "sup");
    }
}
