//! Single-polynomial requests shared by the CLI and the C interface.

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;

use crate::exactnum::text::parse_rational;
use crate::hermlag::{hermite, laguerre, AMode, Label};
use crate::jackcore::{jack_antisymmetric, jack_symmetric, nonsymmetric, AlphaMode};
use crate::macdonald::{macdonald_antisymmetric, macdonald_nonsymmetric, macdonald_symmetric, QtMode};
use crate::mpoly::MPoly;
use crate::partlib::{Composition, Partition};

use super::{Cache, ClusterError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    JackP,
    JackE,
    JackS,
    HermiteP,
    HermiteE,
    LaguerreP,
    LaguerreE,
    MacP,
    MacE,
    MacS,
}

impl Family {
    pub const ALL: [Family; 10] = [
        Family::JackP,
        Family::JackE,
        Family::JackS,
        Family::HermiteP,
        Family::HermiteE,
        Family::LaguerreP,
        Family::LaguerreE,
        Family::MacP,
        Family::MacE,
        Family::MacS,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::JackP => "jack-p",
            Family::JackE => "jack-e",
            Family::JackS => "jack-s",
            Family::HermiteP => "hermite-p",
            Family::HermiteE => "hermite-e",
            Family::LaguerreP => "laguerre-p",
            Family::LaguerreE => "laguerre-e",
            Family::MacP => "mac-p",
            Family::MacE => "mac-e",
            Family::MacS => "mac-s",
        }
    }

    pub fn is_macdonald(self) -> bool {
        matches!(self, Family::MacP | Family::MacE | Family::MacS)
    }

    /// Labelled by a composition rather than a partition.
    pub fn is_nonsymmetric(self) -> bool {
        matches!(self, Family::JackE | Family::HermiteE | Family::LaguerreE | Family::MacE)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = ClusterError;

    fn from_str(s: &str) -> Result<Family, ClusterError> {
        let s = s.trim().to_ascii_lowercase();
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| ClusterError::Config(format!("unknown family {s:?}; expected one of {}", names())))
    }
}

fn names() -> String {
    Family::ALL.iter().map(|f| f.name()).collect::<Vec<_>>().join(", ")
}

/// `generic` or a rational `p/q`.
pub fn parse_alpha(s: &str) -> Result<AlphaMode, ClusterError> {
    parse_value(s, "alpha").map(|v| v.map_or(AlphaMode::Generic, AlphaMode::Value))
}

pub fn parse_a(s: &str) -> Result<AMode, ClusterError> {
    parse_value(s, "a").map(|v| v.map_or(AMode::Generic, AMode::Value))
}

fn parse_value(s: &str, name: &str) -> Result<Option<BigRational>, ClusterError> {
    let s = s.trim();
    if s.eq_ignore_ascii_case("generic") || s == name {
        return Ok(None);
    }
    parse_rational(s).map(Some).ok_or_else(|| ClusterError::Config(format!("bad {name} value {s:?}")))
}

/// `generic`, or `p^d,p^e` meaning q = p^d and t = p^e (`-p^e` for t = -p^e).
pub fn parse_qt(s: &str) -> Result<QtMode, ClusterError> {
    let s = s.trim();
    if s.eq_ignore_ascii_case("generic") {
        return Ok(QtMode::Generic);
    }
    let bad = || ClusterError::Config(format!("bad --qt value {s:?}; expected generic or p^d,p^e"));
    let (qs, ts) = s.split_once(',').ok_or_else(bad)?;
    let exp = |x: &str| -> Result<i64, ClusterError> {
        let x = x.trim();
        if x == "p" {
            return Ok(1);
        }
        x.strip_prefix("p^").and_then(|e| e.trim_matches(|c| c == '(' || c == ')').parse().ok()).ok_or_else(bad)
    };
    let d = exp(qs)?;
    if d <= 0 {
        return Err(ClusterError::Config(format!("q = p^{d} needs a positive exponent")));
    }
    let ts = ts.trim();
    let (neg, ts) = match ts.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, ts),
    };
    let e = exp(ts)?;
    Ok(QtMode::P { d, e, t_negative: neg })
}

/// Coefficient field of a request.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Coefficients {
    Jack { alpha: AlphaMode, a: AMode },
    Qt(QtMode),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComputeRequest {
    pub family: Family,
    /// Parts, or frequency notation `[f0,f1,...]` for partition labels.
    pub label: String,
    pub n: Option<usize>,
    pub coefficients: Coefficients,
}

impl ComputeRequest {
    pub fn key(&self) -> String {
        let coeffs = match &self.coefficients {
            Coefficients::Jack { alpha, a } => format!("alpha={alpha} a={}", match a {
                AMode::Generic => "a".to_string(),
                AMode::Value(v) => v.to_string(),
            }),
            Coefficients::Qt(m) => format!("qt={m}"),
        };
        format!("{}|{}|n={:?}|{coeffs}", self.family, self.label.trim(), self.n)
    }
}

fn partition(label: &str, n: Option<usize>) -> Result<Partition, ClusterError> {
    Ok(Partition::parse(label, n)?)
}

fn composition(label: &str, n: Option<usize>) -> Result<Vec<usize>, ClusterError> {
    let mut parts = Composition::parse(label)?.parts().to_vec();
    if let Some(n) = n {
        if parts.len() > n {
            return Err(ClusterError::Config(format!("composition {label:?} has more than {n} parts")));
        }
        parts.resize(n, 0);
    }
    Ok(parts)
}

fn jack_field(req: &ComputeRequest) -> Result<(AlphaMode, AMode), ClusterError> {
    match &req.coefficients {
        Coefficients::Jack { alpha, a } => Ok((alpha.clone(), a.clone())),
        Coefficients::Qt(_) => Err(ClusterError::Config(format!("{} takes --alpha, not --qt", req.family))),
    }
}

fn qt_field(req: &ComputeRequest) -> Result<QtMode, ClusterError> {
    match &req.coefficients {
        Coefficients::Qt(m) => Ok(*m),
        Coefficients::Jack { .. } => Err(ClusterError::Config(format!("{} takes --qt, not --alpha", req.family))),
    }
}

/// Builds the requested polynomial.
pub fn compute(req: &ComputeRequest) -> Result<MPoly, ClusterError> {
    let label = req.label.as_str();
    let n = req.n;
    let hl_label = || -> Result<Label, ClusterError> {
        Ok(if req.family.is_nonsymmetric() {
            Label::Nonsymmetric(composition(label, n)?)
        } else {
            Label::Symmetric(partition(label, n)?)
        })
    };
    Ok(match req.family {
        Family::JackP => jack_symmetric(&partition(label, n)?, &jack_field(req)?.0)?.poly.clone(),
        Family::JackS => jack_antisymmetric(&partition(label, n)?, &jack_field(req)?.0)?.poly.clone(),
        Family::JackE => nonsymmetric(&composition(label, n)?, &jack_field(req)?.0)?.poly.clone(),
        Family::HermiteP | Family::HermiteE => hermite(&hl_label()?, &jack_field(req)?.0)?.as_ref().clone(),
        Family::LaguerreP | Family::LaguerreE => {
            let (alpha, a) = jack_field(req)?;
            laguerre(&hl_label()?, &alpha, &a)?.as_ref().clone()
        }
        Family::MacP => macdonald_symmetric(&partition(label, n)?, &qt_field(req)?)?.as_ref().clone(),
        Family::MacS => macdonald_antisymmetric(&partition(label, n)?, &qt_field(req)?)?.as_ref().clone(),
        Family::MacE => macdonald_nonsymmetric(&composition(label, n)?, &qt_field(req)?)?.as_ref().clone(),
    })
}

/// As `compute`, going through the on-disk cache.
pub fn compute_cached(req: &ComputeRequest, cache: &Cache) -> Result<MPoly, ClusterError> {
    cache.poly_or_insert(&req.key(), || compute(req))
}
