//! Identity registry, conjecture scans, result cache and reports.

mod cache;
mod compute;
mod identities;
mod report;
mod scan;
mod symcheck;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactnum::{text, FieldElement};
use crate::hermlag::HermLagError;
use crate::jackcore::JackError;
use crate::macdonald::MacError;
use crate::mpoly::MPoly;
use crate::partlib::PartitionError;

pub use cache::Cache;
pub use compute::{compute, compute_cached, parse_a, parse_alpha, parse_qt, Coefficients, ComputeRequest, Family};
pub use report::{render, ReportFormat};
pub use scan::{enumerate, scan, ScanConfig, ScanEntry};

#[derive(Debug, Error)]
pub enum ClusterError {
    #[error(transparent)]
    Jack(#[from] JackError),
    #[error(transparent)]
    HermLag(#[from] HermLagError),
    #[error(transparent)]
    Mac(#[from] MacError),
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error(transparent)]
    Exact(#[from] crate::exactnum::ExactError),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unknown identity id {0:?}")]
    UnknownId(String),
    #[error("{0}")]
    Config(String),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[allow(non_camel_case_types)]
pub enum IdentityId {
    #[default]
    PROP1,
    PROP2,
    PROP3_H,
    PROP3_L,
    EQ14_1,
    EQ14_2,
    EQ12_1,
    PROP4,
    CLUSTER25_1,
    RECT26,
    NONSYM26_1,
    NONSYM22_1,
    RR_J3A,
    PFAFF,
    HW_LP,
    LW_LM,
    B3B5,
    CONJ23_8,
    RECT_QT,
    QT_RR,
}

impl IdentityId {
    pub const ALL: [IdentityId; 20] = [
        IdentityId::PROP1,
        IdentityId::PROP2,
        IdentityId::PROP3_H,
        IdentityId::PROP3_L,
        IdentityId::EQ14_1,
        IdentityId::EQ14_2,
        IdentityId::EQ12_1,
        IdentityId::PROP4,
        IdentityId::CLUSTER25_1,
        IdentityId::RECT26,
        IdentityId::NONSYM26_1,
        IdentityId::NONSYM22_1,
        IdentityId::RR_J3A,
        IdentityId::PFAFF,
        IdentityId::HW_LP,
        IdentityId::LW_LM,
        IdentityId::B3B5,
        IdentityId::CONJ23_8,
        IdentityId::RECT_QT,
        IdentityId::QT_RR,
    ];

    pub fn is_conjecture(self) -> bool {
        matches!(self, IdentityId::CONJ23_8 | IdentityId::RECT_QT | IdentityId::QT_RR)
    }

    /// The statement being checked, written out in plain notation.
    pub fn anchor(self) -> &'static str {
        use IdentityId::*;
        match self {
            PROP1 => "r even: P_{r delta + kappa}(z; -2/(r-1)) = Delta(z)^r P_kappa(z; 2/(r+1))",
            PROP2 => "l odd: E_{kappa + l delta}(z; -2/l) = Delta(z)^l E_kappa(z; 2/l)",
            PROP3_H => "l odd: E^H_{kappa + l delta}(z; -2/l) = Delta^l E^H_kappa(z; 2/l); r even: P^H_{kappa + r delta}(z; -2/(r-1)) = Delta^r P^H_kappa(z; 2/(r+1))",
            PROP3_L => "l odd: E^L_{kappa + l delta}(z; -2/l) = Delta^l E^L_kappa(z; 2/l); r even: P^L_{kappa + r delta}(z; -2/(r-1)) = Delta^r P^L_kappa(z; 2/(r+1))",
            EQ14_1 => "l odd: E_{l delta}(z; -2/l) = E^H_{l delta}(z; -2/l) = E^L_{l delta}(z; -2/l) = Delta(z)^l",
            EQ14_2 => "r even: P_{r delta}(z; -2/(r-1)) = P^H_{r delta} = P^L_{r delta} = Delta(z)^r",
            EQ12_1 => "r even: Delta^{r-1} Asym E_{kappa + delta}(z; 2/(r-1)) = Sym E_{r delta + kappa}(z; -2/(r-1))",
            PROP4 => "r even: P_{kappa + r delta}(z; q, q^{-(r-1)/2}) = (-q^{-1/2})^{r^2 N(N-1)/8} D_{r/2}(z; q^{1/2}) P_kappa(z; q, q^{(r+1)/2})",
            CLUSTER25_1 => "P_{kappa(k,r,s,m)}(z; -(k+1)/(r-1)) at z_{N-n0+1..N} = z equals prod_{j <= N-n0} (z_j - z)^{(r-1)s+1} P_{kappa(k,r,1,m)}(z_1..z_{N-n0})",
            RECT26 => "P_{r^g}(z; -(N+1-g)/(r-1)) at z_{g+1..N} = 1 equals prod_{l <= g} (z_l - 1)^r",
            NONSYM26_1 => "E_{kappa(k,r,s,m)}(z; -(k+1)/(r-1)) at z_{N-n0+1..N} = z is divisible by prod_{j <= N-n0} (z_j - z)^{(r-1)s}",
            NONSYM22_1 => "l odd: E_{kappa + l delta}(z; q, q^{-l/2}) = D_{(l-1)/2}(z; q^{1/2}) prod_{i<j} (z_i - q^{l/2} z_j) f(z), f homogeneous of degree |kappa|",
            RR_J3A => "Sym prod_{groups} prod_{i<j} (z_i - z_j)^2 is proportional to P_{(2 delta)^k}(z; -k-1)",
            PFAFF => "Pf[1/(z_k - z_l)] prod_{i<j} (z_i - z_j)^{r-1} is proportional to P_{kappa(2,r)}(z; -3/(r-1))",
            HW_LP => "sum_j d/dz_j P_kappa(z; alpha) = 0 for staircase and rectangular kappa at their critical alpha",
            LW_LM => "(sum_j z_j^2 d/dz_j - N_phi sum_j z_j) P_kappa = 0 with N_phi = 2|kappa|/N for s = 1, m = k",
            B3B5 => "highest weight P_kappa: P^L_kappa = P^H_kappa = P_kappa",
            CONJ23_8 => "P_{kappa(k,r,s,m)}(z; q, q^{1/alpha}) at z_i = q^{(i-1)/alpha} z, i < (k+1)s, equals prod_{j=-(r-1)(s-1)}^{r-1} prod_{i >= s(k+1)} (z_i - z q^{k/alpha + j}) P_{kappa(k,r,1,m)}",
            RECT_QT => "P_{r^g}(z, z q^{1/alpha}, .., z q^{(N-g-1)/alpha}, z_{N-g+1}, .., z_N) = prod_{l > N-g} prod_{j=0}^{r-1} (z_l - q^{(N-g)/alpha + j} z)",
            QT_RR => "U+ prod_{groups} prod_{i<j} (z_i - t z_j)(t z_i - z_j) at t = q^{-1/(k+1)} is proportional to P_{kappa(k,2,1)}(z; q, q^{-1/(k+1)})",
        }
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for IdentityId {
    type Err = ClusterError;

    fn from_str(s: &str) -> Result<IdentityId, ClusterError> {
        let up = s.trim().to_ascii_uppercase();
        IdentityId::ALL.iter().copied().find(|id| id.to_string() == up).ok_or_else(|| ClusterError::UnknownId(s.to_string()))
    }
}

/// Parameters of a case; each identity reads the ones it needs.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CaseParams {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kappa: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub l: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g: Option<usize>,
}

impl fmt::Display for CaseParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (name, v) in [("k", self.k), ("r", self.r), ("s", self.s), ("m", self.m), ("b", self.b), ("l", self.l), ("g", self.g), ("N", self.n)] {
            if let Some(v) = v {
                parts.push(format!("{name}={v}"));
            }
        }
        if let Some(kappa) = &self.kappa {
            parts.push(format!("kappa={:?}", kappa));
        }
        f.write_str(&parts.join(" "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IdentityCase {
    pub id: IdentityId,
    pub params: CaseParams,
    /// Negative control: one exponent (or, where noted, alpha) is shifted so
    /// the identity must not hold.
    #[serde(default)]
    pub perturb: bool,
}

impl IdentityCase {
    pub fn new(id: IdentityId, params: CaseParams) -> IdentityCase {
        IdentityCase { id, params, perturb: false }
    }

    pub fn perturbed(mut self) -> IdentityCase {
        self.perturb = true;
        self
    }

    /// Stable key for caching and ordering.
    pub fn key(&self) -> String {
        format!("{}|{}|{}", self.id, self.params, if self.perturb { "perturbed" } else { "exact" })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Holds,
    Fails,
    NotApplicable,
    ConjectureConsistent,
    ConjectureViolated,
}

impl Verdict {
    pub fn is_failure(self) -> bool {
        matches!(self, Verdict::Fails | Verdict::ConjectureViolated)
    }

    pub fn is_positive(self) -> bool {
        matches!(self, Verdict::Holds | Verdict::ConjectureConsistent)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
            Verdict::NotApplicable => "not-applicable",
            Verdict::ConjectureConsistent => "conjecture-consistent",
            Verdict::ConjectureViolated => "conjecture-violated",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WitnessKind {
    Poly,
    Scalar,
    /// Lines `e [lambda] : c` for c z^e m_lambda in the kept variables.
    Sym,
}

/// A polynomial or scalar in canonical text form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub name: String,
    pub kind: WitnessKind,
    pub zero: bool,
    pub text: String,
}

impl Witness {
    pub fn poly(name: impl Into<String>, p: &MPoly) -> Witness {
        Witness { name: name.into(), kind: WitnessKind::Poly, zero: p.is_zero(), text: p.to_text() }
    }

    pub fn scalar(name: impl Into<String>, c: &FieldElement) -> Witness {
        Witness { name: name.into(), kind: WitnessKind::Scalar, zero: c.is_zero(), text: text::field_to_text(c) }
    }

    pub fn sym(name: impl Into<String>, text: String, zero: bool) -> Witness {
        Witness { name: name.into(), kind: WitnessKind::Sym, zero, text }
    }

    pub fn to_poly(&self) -> Option<MPoly> {
        match self.kind {
            WitnessKind::Poly => MPoly::from_text(&self.text).ok(),
            WitnessKind::Scalar | WitnessKind::Sym => None,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IdentityReport {
    pub case: IdentityCase,
    pub verdict: Verdict,
    pub witnesses: Vec<Witness>,
    #[serde(default)]
    pub notes: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub elapsed_ms: u128,
    pub anchor: String,
}

impl IdentityReport {
    pub fn witness(&self, name: &str) -> Option<&Witness> {
        self.witnesses.iter().find(|w| w.name == name)
    }

    pub fn has_nonzero_witness(&self) -> bool {
        self.witnesses.iter().any(|w| !w.zero)
    }
}

/// Outcome of an identity check before timing and bookkeeping are added.
#[derive(Debug, Default)]
pub(crate) struct Outcome {
    pub ok: Option<bool>,
    pub witnesses: Vec<Witness>,
    pub notes: Vec<String>,
}

impl Outcome {
    pub fn not_applicable(reason: impl Into<String>) -> Outcome {
        Outcome { ok: None, witnesses: Vec::new(), notes: vec![reason.into()] }
    }
}

/// Builds both sides of the case's identity and compares them exactly.
pub fn verify(case: &IdentityCase) -> IdentityReport {
    let start = Instant::now();
    let result = identities::run(case);
    let elapsed_ms = start.elapsed().as_millis();
    let (verdict, witnesses, notes, error) = match result {
        Ok(out) => {
            let verdict = match (out.ok, case.id.is_conjecture()) {
                (None, _) => Verdict::NotApplicable,
                (Some(true), false) => Verdict::Holds,
                (Some(false), false) => Verdict::Fails,
                (Some(true), true) => Verdict::ConjectureConsistent,
                (Some(false), true) => Verdict::ConjectureViolated,
            };
            (verdict, out.witnesses, out.notes, None)
        }
        Err(e) => (Verdict::NotApplicable, Vec::new(), Vec::new(), Some(e.to_string())),
    };
    debug_assert!(!verdict.is_failure() || witnesses.iter().any(|w| !w.zero), "failure without a nonzero witness: {}", case.key());
    IdentityReport { case: case.clone(), verdict, witnesses, notes, error, elapsed_ms, anchor: case.id.anchor().to_string() }
}
