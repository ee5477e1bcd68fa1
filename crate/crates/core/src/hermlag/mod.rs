//! Dunkl operators of type A and B, their Laplacians, and generalized
//! Hermite and Laguerre polynomials via truncated exponentials and via the
//! binomial expansion.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use thiserror::Error;

use crate::exactnum::{BigRational, ExactError, FieldElement, Param, ParamSet};
use crate::jackcore::{highest_weight_apply, jack_symmetric, nonsymmetric, shifted_expansion, AlphaMode, JackError};
use crate::mpoly::{apply_operator, divided_difference, MPoly, Monomial, OperatorTag};
use crate::partlib::Partition;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HermLagError {
    #[error("type B Laplacian needs input even in every variable")]
    NotEven,
    #[error("type B Dunkl operator needs the parameter a")]
    MissingA,
    #[error(transparent)]
    Jack(#[from] JackError),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DunklType {
    A,
    B,
}

#[derive(Clone, Debug)]
pub struct DunklConfig {
    pub kind: DunklType,
    pub alpha: FieldElement,
    pub a: Option<FieldElement>,
}

impl DunklConfig {
    pub fn type_a(alpha: FieldElement) -> DunklConfig {
        DunklConfig { kind: DunklType::A, alpha, a: None }
    }

    pub fn type_b(alpha: FieldElement, a: FieldElement) -> DunklConfig {
        DunklConfig { kind: DunklType::B, alpha, a: Some(a) }
    }
}

/// The Laguerre parameter: a free indeterminate or a rational value.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum AMode {
    Generic,
    Value(BigRational),
}

impl AMode {
    pub fn field(&self) -> ParamSet {
        match self {
            AMode::Generic => ParamSet::single(Param::A),
            AMode::Value(_) => ParamSet::EMPTY,
        }
    }

    fn key(&self) -> String {
        match self {
            AMode::Generic => "a".into(),
            AMode::Value(v) => v.to_string(),
        }
    }
}

fn field_of(alpha: &AlphaMode, a: &AMode) -> ParamSet {
    alpha.field().union(a.field())
}

fn a_value(a: &AMode, field: ParamSet) -> FieldElement {
    match a {
        AMode::Generic => FieldElement::param(Param::A, field),
        AMode::Value(v) => FieldElement::from_rational(v.clone(), field),
    }
}

/// (f - sigma_i f)/y_i: odd-in-y_i terms, doubled, with the exponent lowered.
fn reflection_quotient(f: &MPoly, i: usize) -> MPoly {
    let two = FieldElement::from_int(2, f.field());
    MPoly::from_terms(
        f.nvars(),
        f.field(),
        f.terms().filter(|(m, _)| m.0[i] % 2 == 1).map(|(m, c)| {
            let mut m2 = m.clone();
            m2.0[i] -= 1;
            (m2, c * &two)
        }),
    )
}

/// d_i f for type A or B (0-based i).
pub fn dunkl_apply(f: &MPoly, cfg: &DunklConfig, i: usize) -> Result<MPoly, HermLagError> {
    let n = f.nvars();
    let field = f.field().union(cfg.alpha.vars());
    let f = f.with_field(field);
    let inv_alpha = cfg.alpha.inv()?;
    let mut diff = MPoly::zero(n, field);
    for p in 0..n {
        if p == i {
            continue;
        }
        diff = diff.add(&divided_difference(&f, i, p));
        if cfg.kind == DunklType::B {
            // (f - sigma_i sigma_p s_ip f)/(y_i + y_p) = sigma_p DD_ip (sigma_p f)
            let flipped = apply_operator(&f, &OperatorTag::Reflect(p));
            diff = diff.add(&apply_operator(&divided_difference(&flipped, i, p), &OperatorTag::Reflect(p)));
        }
    }
    let mut out = apply_operator(&f, &OperatorTag::Partial(i)).add(&diff.scale(&inv_alpha));
    if cfg.kind == DunklType::B {
        let a = cfg.a.as_ref().ok_or(HermLagError::MissingA)?;
        let half = FieldElement::ratio(1, 2, ParamSet::EMPTY);
        let c = a + &half;
        out = out.with_field(field.union(c.vars())).add(&reflection_quotient(&f, i).scale(&c));
    }
    Ok(out)
}

pub fn is_even(f: &MPoly) -> bool {
    f.terms().all(|(m, _)| m.0.iter().all(|e| e % 2 == 0))
}

/// Delta = sum_i d_i^2. Type B requires even input.
pub fn laplacian_apply(f: &MPoly, cfg: &DunklConfig) -> Result<MPoly, HermLagError> {
    if cfg.kind == DunklType::B && !is_even(f) {
        return Err(HermLagError::NotEven);
    }
    let mut out = MPoly::zero(f.nvars(), f.field().union(cfg.alpha.vars()));
    for i in 0..f.nvars() {
        let d = dunkl_apply(f, cfg, i)?;
        out = out.add(&dunkl_apply(&d, cfg, i)?);
    }
    debug_assert!(out.is_zero() || out.degree().unwrap() + 2 <= f.degree().unwrap());
    Ok(out)
}

/// exp(-Delta/4) f = sum_m (-1/4)^m / m! Delta^m f; returns the result and
/// the number of nonzero summands.
pub fn exp_laplacian(f: &MPoly, cfg: &DunklConfig) -> Result<(MPoly, usize), HermLagError> {
    let mut out = f.clone();
    let mut term = f.clone();
    let mut m: i64 = 0;
    let mut count = if f.is_zero() { 0 } else { 1 };
    loop {
        m += 1;
        term = laplacian_apply(&term, cfg)?;
        if term.is_zero() {
            break;
        }
        // term_m = -Delta term_{m-1} / (4m)
        term = term.scale(&FieldElement::ratio(-1, 4 * m, ParamSet::EMPTY));
        out = out.add(&term);
        count += 1;
    }
    Ok((out, count))
}

/// A polynomial even in every y_i, stored in the y variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvenY(MPoly);

impl EvenY {
    /// x_i -> y_i^2.
    pub fn from_x(f: &MPoly) -> EvenY {
        EvenY(MPoly::from_terms(
            f.nvars(),
            f.field(),
            f.terms().map(|(m, c)| (Monomial(m.0.iter().map(|e| e * 2).collect()), c.clone())),
        ))
    }

    pub fn from_y(f: MPoly) -> Result<EvenY, HermLagError> {
        if is_even(&f) {
            Ok(EvenY(f))
        } else {
            Err(HermLagError::NotEven)
        }
    }

    pub fn as_y(&self) -> &MPoly {
        &self.0
    }

    /// y_i^2 -> x_i.
    pub fn to_x(&self) -> MPoly {
        MPoly::from_terms(
            self.0.nvars(),
            self.0.field(),
            self.0.terms().map(|(m, c)| (Monomial(m.0.iter().map(|e| e / 2).collect()), c.clone())),
        )
    }
}

type Cache = Mutex<HashMap<String, Arc<MPoly>>>;

fn memo(key: String, build: impl FnOnce() -> Result<MPoly, HermLagError>) -> Result<Arc<MPoly>, HermLagError> {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&key) {
        return Ok(hit.clone());
    }
    let v = Arc::new(build()?);
    cache.lock().unwrap().entry(key).or_insert_with(|| v.clone());
    Ok(v)
}

/// Which Jack polynomial a Hermite or Laguerre polynomial is built from.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Label {
    /// E_eta.
    Nonsymmetric(Vec<usize>),
    /// P_kappa.
    Symmetric(Partition),
}

impl Label {
    fn key(&self) -> String {
        match self {
            Label::Nonsymmetric(e) => format!("E{:?}", e),
            Label::Symmetric(k) => format!("P{:?}", k.parts()),
        }
    }

    fn jack(&self, alpha: &AlphaMode) -> Result<MPoly, HermLagError> {
        Ok(match self {
            Label::Nonsymmetric(e) => nonsymmetric(e, alpha)?.poly.clone(),
            Label::Symmetric(k) => jack_symmetric(k, alpha)?.poly.clone(),
        })
    }
}

/// exp(-Delta_A/4) applied to E_eta or P_kappa.
pub fn hermite(label: &Label, alpha: &AlphaMode) -> Result<Arc<MPoly>, HermLagError> {
    memo(format!("H|{}|{}", label.key(), alpha), || {
        let jack = label.jack(alpha)?;
        let cfg = DunklConfig::type_a(alpha.alpha());
        Ok(exp_laplacian(&jack, &cfg)?.0)
    })
}

/// exp(-Delta_B/4) applied to E_eta(y^2) or P_kappa(y^2), returned in x = y^2.
pub fn laguerre(label: &Label, alpha: &AlphaMode, a: &AMode) -> Result<Arc<MPoly>, HermLagError> {
    memo(format!("L|{}|{}|{}", label.key(), alpha, a.key()), || {
        let field = field_of(alpha, a);
        let jack = label.jack(alpha)?.with_field(field);
        let cfg = DunklConfig::type_b(alpha.alpha().with_vars(field), a_value(a, field));
        let y = EvenY::from_x(&jack);
        let (out, _) = exp_laplacian(y.as_y(), &cfg)?;
        Ok(EvenY::from_y(out)?.to_x())
    })
}

/// [u]_kappa / [u]_mu = prod_j prod_{i=mu_j}^{kappa_j - 1} (u - j/alpha + i), 0-based j.
fn pochhammer_ratio(u: &FieldElement, alpha: &FieldElement, kappa: &Partition, mu: &Partition) -> Result<FieldElement, HermLagError> {
    let field = u.vars().union(alpha.vars());
    let inv_alpha = alpha.inv()?;
    let mut out = FieldElement::one(field);
    for (j, (&k, &m)) in kappa.parts().iter().zip(mu.parts()).enumerate() {
        let base = u - &(&inv_alpha * &FieldElement::from_int(j as i64, field));
        for i in m..k {
            out = &out * &(&base + &FieldElement::from_int(i as i64, field));
        }
    }
    Ok(out)
}

/// P_kappa^(L) from the binomial expansion, in the form
/// (-1)^|kappa| sum_mu (-1)^|mu| c_mu ([a+h]_kappa/[a+h]_mu) P_mu(x),
/// where P_kappa(1+x) = sum_mu c_mu P_mu(x) and h = 1 + (N-1)/alpha. This
/// needs no division by P_kappa(1^N).
pub fn laguerre_binomial(kappa: &Partition, alpha: &AlphaMode, a: &AMode) -> Result<Arc<MPoly>, HermLagError> {
    memo(format!("LB|{:?}|{}|{}", kappa.parts(), alpha, a.key()), || {
        let n = kappa.n();
        let field = field_of(alpha, a);
        let al = alpha.alpha().with_vars(field);
        let h = &FieldElement::one(field) + &FieldElement::from_int(n as i64 - 1, field).checked_div(&al)?;
        let u = &a_value(a, field) + &h;
        let mut out = MPoly::zero(n, field);
        for (mu, c) in shifted_expansion(kappa, alpha)? {
            let sign = if (kappa.modulus() + mu.modulus()) % 2 == 0 { 1 } else { -1 };
            let coef = &(c.with_vars(field) * pochhammer_ratio(&u, &al, kappa, &mu)?) * &FieldElement::from_int(sign, field);
            let p = jack_symmetric(&mu, alpha)?.poly.with_field(field);
            out = out.add(&p.scale(&coef));
        }
        Ok(out)
    })
}

/// Outcome of checking P^(L) = P and P^(H) = P for a highest-weight Jack
/// polynomial.
#[derive(Clone, Debug)]
pub struct HwCoincidence {
    /// False when L+ P_kappa != 0; the residuals are then not computed.
    pub precondition: bool,
    pub laguerre_residual: Option<MPoly>,
    pub laguerre_binomial_residual: Option<MPoly>,
    pub hermite_residual: Option<MPoly>,
}

impl HwCoincidence {
    pub fn holds(&self) -> bool {
        self.precondition
            && [&self.laguerre_residual, &self.laguerre_binomial_residual, &self.hermite_residual]
                .iter()
                .all(|r| r.as_ref().is_some_and(|p| p.is_zero()))
    }
}

pub fn verify_hw_coincidence(kappa: &Partition, alpha: &AlphaMode, a: &AMode) -> Result<HwCoincidence, HermLagError> {
    let p = jack_symmetric(kappa, alpha)?.poly.clone();
    if !highest_weight_apply(&p).is_zero() {
        return Ok(HwCoincidence { precondition: false, laguerre_residual: None, laguerre_binomial_residual: None, hermite_residual: None });
    }
    let label = Label::Symmetric(kappa.clone());
    let field = field_of(alpha, a);
    let pl = p.with_field(field);
    let lag = laguerre(&label, alpha, a)?;
    let lagb = laguerre_binomial(kappa, alpha, a)?;
    let her = hermite(&label, alpha)?;
    Ok(HwCoincidence {
        precondition: true,
        laguerre_residual: Some(lag.sub(&pl)),
        laguerre_binomial_residual: Some(lagb.sub(&pl)),
        hermite_residual: Some(her.sub(&p)),
    })
}
