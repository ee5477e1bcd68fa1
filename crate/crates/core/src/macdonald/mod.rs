//! Symmetric, nonsymmetric and t-antisymmetric Macdonald polynomials, Hecke
//! operators, the Jack limit and wheel-condition checks.

mod hecke;
mod nonsym;
mod qt;
mod sym;

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::One;
use thiserror::Error;

use crate::exactnum::{BigRational, ExactError, Exps, FieldElement, Param, ParamSet};
use crate::jackcore::{Collision, SymPoly};
use crate::mpoly::{substitute, t_vandermonde, MPoly, Subst, SubstPlan};
use crate::partlib::{eigen_macdonald_nonsym, Composition, Partition};

pub use hecke::{
    hecke_apply, hecke_inverse_apply, hecke_word_apply, omega_apply, reduced_word, t_symmetrize, t_symmetrize_by_words,
    y_apply, TSymMode,
};
pub use qt::QtMode;
pub use sym::{lqt_apply, m1_apply};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MacError {
    #[error("pole at {mode}: eigenvalues of {nu:?} and {eta:?} collide and the generic polynomial is singular there")]
    Pole { mode: String, nu: Vec<usize>, eta: Vec<usize> },
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error("post-construction check failed: Y_{0} E_eta != ebar_{0} E_eta")]
    EigenCheck(usize),
    #[error("coefficient {0} has no finite limit at q = 1 with t = q^(1/alpha)")]
    LimitPole(String),
    #[error("coefficient {0} is not a function of q and t")]
    NotQt(String),
}

type Cache = Mutex<HashMap<String, Arc<MPoly>>>;

fn memo(key: String, build: impl FnOnce() -> Result<MPoly, MacError>) -> Result<Arc<MPoly>, MacError> {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&key) {
        return Ok(hit.clone());
    }
    let v = Arc::new(build()?);
    cache.lock().unwrap().entry(key).or_insert_with(|| v.clone());
    Ok(v)
}

fn qt_bindings(mode: &QtMode) -> Vec<(Param, FieldElement)> {
    vec![(Param::Q, mode.q()), (Param::T, mode.t())]
}

fn pole(mode: &QtMode, c: &Collision, err: ExactError) -> MacError {
    match err {
        ExactError::Pole { .. } => MacError::Pole { mode: mode.to_string(), nu: c.nu.clone(), eta: c.eta.clone() },
        other => MacError::Exact(other),
    }
}

/// E_eta(z; q, t), with Y_i E = ebar_i E checked for every i.
pub fn macdonald_nonsymmetric(eta: &[usize], mode: &QtMode) -> Result<Arc<MPoly>, MacError> {
    memo(format!("E|{:?}|{}", eta, mode), || {
        let poly = match nonsym::solve(eta, mode) {
            Ok(p) => p,
            Err(c) => {
                let g = macdonald_nonsymmetric(eta, &QtMode::Generic)?;
                g.specialize(&qt_bindings(mode)).map_err(|e| pole(mode, &c, e))?
            }
        };
        let (q, t) = (mode.q(), mode.t());
        let comp = Composition::new(eta);
        for i in 0..eta.len() {
            let ev = eigen_macdonald_nonsym(&comp, i, &q, &t);
            if y_apply(&poly, i, &q, &t) != poly.scale(&ev) {
                return Err(MacError::EigenCheck(i));
            }
        }
        Ok(poly)
    })
}

/// P_kappa(z; q, t) in the monomial symmetric basis.
pub fn macdonald_symmetric_sym(kappa: &Partition, mode: &QtMode) -> Result<SymPoly, MacError> {
    match sym::solve(kappa, mode) {
        Ok(s) => Ok(s),
        Err(c) => {
            let g = sym::solve(kappa, &QtMode::Generic).expect("generic solve");
            g.specialize(&qt_bindings(mode)).map_err(|e| pole(mode, &c, e))
        }
    }
}

pub fn macdonald_symmetric(kappa: &Partition, mode: &QtMode) -> Result<Arc<MPoly>, MacError> {
    memo(format!("P|{:?}|{}", kappa.parts(), mode), || Ok(macdonald_symmetric_sym(kappa, mode)?.to_mpoly().with_field(mode.field())))
}

/// S_{delta+kappa}(z; q, t) = t^{-N(N-1)/2} Delta_t(z) P_kappa(z; q, q t).
pub fn macdonald_antisymmetric(kappa: &Partition, mode: &QtMode) -> Result<Arc<MPoly>, MacError> {
    memo(format!("S|{:?}|{}", kappa.parts(), mode), || {
        let n = kappa.n();
        let t = mode.t();
        let p = match mode.with_qt() {
            Some(shifted) => macdonald_symmetric(kappa, &shifted)?.as_ref().clone(),
            None => {
                let qt = &mode.q() * &t;
                macdonald_symmetric(kappa, mode)?.specialize(&[(Param::T, qt)])?
            }
        };
        let pref = t.pow(-((n * (n.saturating_sub(1)) / 2) as i64))?;
        Ok(t_vandermonde(n, &t).mul(&p).scale(&pref))
    })
}

/// lim_{q -> 1} c(q, q^{1/alpha}) for c in Q(q, t).
///
/// With q = e^x and t = e^{x/alpha}, a polynomial sum c_ab q^a t^b has x^k
/// coefficient sum c_ab (a + b/alpha)^k / k!; the limit is the ratio of the
/// lowest nonvanishing orders of numerator and denominator.
pub fn jack_limit_coeff(c: &FieldElement) -> Result<FieldElement, MacError> {
    let allowed = ParamSet::of(&[Param::Q, Param::T]);
    if !c.occurring().is_subset(allowed) {
        return Err(MacError::NotQt(c.to_string()));
    }
    let al = ParamSet::single(Param::Alpha);
    let (num, den) = (c.numer(), c.denom());
    let (kn, vn) = lowest_order(num.terms(), al);
    let (kd, vd) = lowest_order(den.terms(), al);
    match kn.cmp(&kd) {
        std::cmp::Ordering::Equal => Ok(vn.checked_div(&vd)?),
        std::cmp::Ordering::Greater => Ok(FieldElement::zero(al)),
        std::cmp::Ordering::Less => Err(MacError::LimitPole(c.to_string())),
    }
}

/// Lowest k with nonzero sum c (a + b/alpha)^k / k!, and that value.
fn lowest_order(terms: &[(Exps, crate::exactnum::BigInt)], al: ParamSet) -> (usize, FieldElement) {
    let alpha_inv = FieldElement::param(Param::Alpha, al).inv().unwrap();
    let rates: Vec<(FieldElement, FieldElement)> = terms
        .iter()
        .map(|(e, c)| {
            let a = FieldElement::from_int(e[Param::Q.index()] as i64, al);
            let b = FieldElement::from_int(e[Param::T.index()] as i64, al);
            (&a + &(&b * &alpha_inv), FieldElement::from_int(c.clone(), al))
        })
        .collect();
    // A nonzero polynomial has a nonvanishing order below the number of terms.
    let mut powers: Vec<FieldElement> = rates.iter().map(|_| FieldElement::one(al)).collect();
    let mut fact = BigRational::one();
    for k in 0..=rates.len() {
        if k > 0 {
            fact *= BigRational::from_integer(k.into());
            for (p, (r, _)) in powers.iter_mut().zip(&rates) {
                *p = &*p * r;
            }
        }
        let mut s = FieldElement::zero(al);
        for (p, (_, c)) in powers.iter().zip(&rates) {
            s += &(p * c);
        }
        if !s.is_zero() {
            let inv_fact = FieldElement::from_rational(BigRational::one() / fact.clone(), al);
            return (k, &s * &inv_fact);
        }
    }
    debug_assert!(rates.is_empty() || rates.iter().all(|(_, c)| c.is_zero()));
    (usize::MAX, FieldElement::zero(al))
}

/// Coefficientwise Jack limit of a polynomial over Q(q, t).
pub fn jack_limit(f: &MPoly) -> Result<MPoly, MacError> {
    let al = ParamSet::single(Param::Alpha);
    f.try_map_coeffs(al, jack_limit_coeff)
}

/// One wheel substitution z_j -> factor * z_i and its residual.
#[derive(Clone, Debug)]
pub struct WheelResidual {
    pub i: usize,
    pub j: usize,
    pub s: usize,
    pub residual: MPoly,
}

#[derive(Clone, Debug)]
pub struct WheelReport {
    pub cases: Vec<WheelResidual>,
}

impl WheelReport {
    pub fn holds(&self) -> bool {
        !self.cases.is_empty() && self.cases.iter().all(|c| c.residual.is_zero())
    }

    pub fn first_failure(&self) -> Option<&WheelResidual> {
        self.cases.iter().find(|c| !c.residual.is_zero())
    }
}

/// Wheel family for k = 1: z_j = z_i t q^s with t = q^{-(r-1)/2}, encoded
/// as q = p^2, t = p^{-(r-1)}, so t q^s = p^{2s-(r-1)}.
///
/// Symmetric case: i != j and 0 <= s <= r-1. Nonsymmetric case:
/// 0 <= s <= r-2, with j < i required when s = 0.
pub fn wheel_family_k1(n: usize, r: usize, nonsymmetric: bool) -> Vec<(usize, usize, usize, i64)> {
    let mut out = Vec::new();
    let smax = if nonsymmetric { r.saturating_sub(2) } else { r - 1 };
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            for s in 0..=smax {
                if nonsymmetric && s == 0 && j >= i {
                    continue;
                }
                out.push((i, j, s, 2 * s as i64 - (r as i64 - 1)));
            }
        }
    }
    out
}

/// Substitutes z_j -> p^{exp} z_i for each entry and records the residual.
/// `f` must be over Q(p).
pub fn wheel_check(f: &MPoly, family: &[(usize, usize, usize, i64)]) -> WheelReport {
    let n = f.nvars();
    let field = f.field().union(ParamSet::single(Param::P));
    let p = FieldElement::param(Param::P, field);
    let cases = family
        .iter()
        .map(|&(i, j, s, e)| {
            let mut plan = SubstPlan::identity(n, field);
            plan.set(j, Subst::Var { target: i, scale: p.pow(e).unwrap() });
            WheelResidual { i, j, s, residual: substitute(f, &plan) }
        })
        .collect();
    WheelReport { cases }
}

#[cfg(test)]
mod tests;
