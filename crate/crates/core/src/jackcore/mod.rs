//! Nonsymmetric, symmetric and antisymmetric Jack polynomials, the expansion
//! of symmetric polynomials in the P-basis, and generalized binomial
//! coefficients.

mod cherednik;
mod sutherland;
mod sym;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use thiserror::Error;

use crate::exactnum::{BigRational, ExactError, FieldElement, Param, ParamSet};
use crate::mpoly::{apply_operator, is_symmetric, substitute, vandermonde, MPoly, Monomial, OperatorTag, Subst, SubstPlan};
use crate::partlib::{Composition, Partition, PartitionError};

pub use cherednik::{apply_xi, apply_xi_reference, Collision};
pub use sutherland::{apply_scaled_sutherland, scaled_eigenvalue};
pub use sym::{orbit_size, stabilizer_size, SymPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum JackError {
    #[error("pole at alpha = {alpha}: eigenvalues of {nu:?} and {eta:?} collide and the generic polynomial is singular there")]
    Pole { alpha: String, nu: Vec<usize>, eta: Vec<usize> },
    #[error("pole at alpha = {0}")]
    PoleAt(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error("input polynomial is not symmetric")]
    NotSymmetric,
    #[error("{mu:?} is not contained in {kappa:?}")]
    NotContained { kappa: Vec<usize>, mu: Vec<usize> },
    #[error("2|kappa| = {0} is not divisible by N = {1}")]
    NphiNotIntegral(usize, usize),
    #[error("post-construction check failed: xi_{0} E_eta != ebar_{0} E_eta")]
    EigenCheck(usize),
}

/// Whether alpha stays a free parameter or is fixed to a rational value.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum AlphaMode {
    Generic,
    Value(BigRational),
}

impl AlphaMode {
    pub fn field(&self) -> ParamSet {
        match self {
            AlphaMode::Generic => ParamSet::single(Param::Alpha),
            AlphaMode::Value(_) => ParamSet::EMPTY,
        }
    }

    pub fn alpha(&self) -> FieldElement {
        match self {
            AlphaMode::Generic => FieldElement::param(Param::Alpha, self.field()),
            AlphaMode::Value(v) => FieldElement::from_rational(v.clone(), ParamSet::EMPTY),
        }
    }
}

impl fmt::Display for AlphaMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlphaMode::Generic => write!(f, "alpha"),
            AlphaMode::Value(v) => write!(f, "{}", v),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum JackFamily {
    Nonsymmetric,
    Symmetric,
    Antisymmetric,
}

impl fmt::Display for JackFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            JackFamily::Nonsymmetric => "E",
            JackFamily::Symmetric => "P",
            JackFamily::Antisymmetric => "S",
        };
        f.write_str(s)
    }
}

/// Construction route for the symmetric polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SymRoute {
    /// Sym E_kappa, normalized.
    Cherednik,
    /// Triangular solve in the monomial symmetric basis.
    Sutherland,
    /// Cherednik when the number of monomials is small, Sutherland otherwise.
    Auto,
}

/// Monomial budget below which `SymRoute::Auto` symmetrizes E_kappa.
const AUTO_CHEREDNIK_BUDGET: u64 = 3000;

#[derive(Clone, Debug)]
pub struct JackResult {
    pub family: JackFamily,
    /// eta for E, kappa for P, and kappa + delta for S.
    pub label: Vec<usize>,
    pub poly: MPoly,
    pub mode: AlphaMode,
}

type Cache = Mutex<HashMap<String, Arc<JackResult>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Larger results are returned but not kept.
const CACHE_MAX_TERMS: usize = 200_000;

fn cached(key: String, build: impl FnOnce() -> Result<JackResult, JackError>) -> Result<Arc<JackResult>, JackError> {
    if let Some(hit) = cache().lock().unwrap().get(&key) {
        return Ok(hit.clone());
    }
    // Computed outside the lock; a concurrent duplicate just overwrites an
    // identical value.
    let value = Arc::new(build()?);
    if value.poly.len() <= CACHE_MAX_TERMS {
        cache().lock().unwrap().entry(key).or_insert_with(|| value.clone());
    }
    Ok(value)
}

fn collision_error(mode: &AlphaMode, c: &Collision, err: ExactError) -> JackError {
    match err {
        ExactError::Pole { .. } => JackError::Pole { alpha: mode.to_string(), nu: c.nu.clone(), eta: c.eta.clone() },
        other => JackError::Exact(other),
    }
}

fn alpha_binding(mode: &AlphaMode) -> Vec<(Param, FieldElement)> {
    vec![(Param::Alpha, mode.alpha())]
}

fn terms_to_poly(n: usize, field: ParamSet, terms: Vec<(cherednik::Exp, FieldElement)>) -> MPoly {
    MPoly::from_terms(n, field, terms.into_iter().map(|(e, c)| (Monomial(e), c)))
}

fn check_eigen(e: &MPoly, eta: &[usize], alpha: &FieldElement) -> Result<(), JackError> {
    let comp = Composition::new(eta);
    for i in 0..eta.len() {
        let ev = crate::partlib::eigen_jack_nonsym(&comp, i, alpha);
        if apply_xi(e, i, alpha) != e.scale(&ev) {
            return Err(JackError::EigenCheck(i));
        }
    }
    Ok(())
}

fn nonsymmetric_uncached(eta: &[usize], mode: &AlphaMode) -> Result<MPoly, JackError> {
    let n = eta.len();
    let alpha = mode.alpha();
    let poly = match cherednik::solve(eta, &alpha, matches!(mode, AlphaMode::Value(_))) {
        Ok(terms) => terms_to_poly(n, mode.field(), terms),
        Err(c) => {
            let g = nonsymmetric(eta, &AlphaMode::Generic)?;
            g.poly.specialize(&alpha_binding(mode)).map_err(|e| collision_error(mode, &c, e))?
        }
    };
    check_eigen(&poly, eta, &alpha)?;
    Ok(poly)
}

/// E_eta: the joint eigenfunction of the Cherednik operators with leading
/// monomial z^eta.
pub fn nonsymmetric(eta: &[usize], mode: &AlphaMode) -> Result<Arc<JackResult>, JackError> {
    let key = format!("E|{:?}|{}", eta, mode);
    cached(key, || {
        Ok(JackResult { family: JackFamily::Nonsymmetric, label: eta.to_vec(), poly: nonsymmetric_uncached(eta, mode)?, mode: mode.clone() })
    })
}

pub fn jack_nonsymmetric(eta: &Composition, mode: &AlphaMode) -> Result<Arc<JackResult>, JackError> {
    nonsymmetric(eta.parts(), mode)
}

/// P_kappa from Sym E_kappa: Sym z^nu = |Stab(nu)| m_{nu+}.
fn sym_via_cherednik(kappa: &Partition, alpha: &FieldElement) -> Result<SymPoly, Collision> {
    let terms = cherednik::solve(kappa.parts(), alpha, !alpha.vars().contains(Param::Alpha))?;
    let mut s = SymPoly::zero(kappa.n(), alpha.vars());
    for (e, c) in terms {
        let mut sorted: Vec<usize> = e.iter().map(|&x| x as usize).collect();
        let stab = stabilizer_size(&sorted);
        sorted.sort_unstable_by(|a, b| b.cmp(a));
        s.add_term(Partition::new(&sorted, kappa.n()).unwrap(), &(&c * &FieldElement::from_int(stab as i64, alpha.vars())));
    }
    let lead = s.coeff(kappa);
    if lead.is_zero() {
        return Err(Collision { nu: kappa.parts().to_vec(), eta: kappa.parts().to_vec() });
    }
    Ok(s.scale(&lead.inv().unwrap()))
}

fn monomial_budget(kappa: &Partition) -> u64 {
    crate::partlib::dominated_partitions(kappa).iter().map(orbit_size).sum()
}

fn resolve_route(kappa: &Partition, route: SymRoute) -> SymRoute {
    match route {
        SymRoute::Auto if monomial_budget(kappa) <= AUTO_CHEREDNIK_BUDGET => SymRoute::Cherednik,
        SymRoute::Auto => SymRoute::Sutherland,
        r => r,
    }
}

fn sym_direct(kappa: &Partition, alpha: &FieldElement, route: SymRoute) -> Result<SymPoly, Collision> {
    match route {
        SymRoute::Cherednik => sym_via_cherednik(kappa, alpha),
        _ => sutherland::solve(kappa, alpha),
    }
}

/// P_kappa in the monomial symmetric basis. At a specialized alpha the
/// direct solve is used only when its pivots are nonzero; otherwise the
/// generic polynomial is specialized, which either succeeds or reports a pole.
pub fn jack_symmetric_sym(kappa: &Partition, mode: &AlphaMode, route: SymRoute) -> Result<SymPoly, JackError> {
    let route = resolve_route(kappa, route);
    let alpha = mode.alpha();
    match sym_direct(kappa, &alpha, route) {
        Ok(s) => Ok(s),
        Err(c) => {
            if let AlphaMode::Generic = mode {
                // Over Q(alpha) a collision cannot happen for either route.
                unreachable!("generic solve collided at {:?}", c);
            }
            let other = if route == SymRoute::Cherednik { SymRoute::Sutherland } else { SymRoute::Cherednik };
            if let Ok(s) = sym_direct(kappa, &alpha, other) {
                return Ok(s);
            }
            let g = sutherland::solve(kappa, &AlphaMode::Generic.alpha()).expect("generic solve");
            g.specialize(&alpha_binding(mode)).map_err(|e| collision_error(mode, &c, e))
        }
    }
}

pub fn jack_symmetric_via(kappa: &Partition, mode: &AlphaMode, route: SymRoute) -> Result<Arc<JackResult>, JackError> {
    let key = format!("P|{:?}|{}|{:?}", kappa.parts(), mode, route);
    cached(key, || {
        let s = jack_symmetric_sym(kappa, mode, route)?;
        Ok(JackResult { family: JackFamily::Symmetric, label: kappa.parts().to_vec(), poly: s.to_mpoly().with_field(mode.field()), mode: mode.clone() })
    })
}

/// P_kappa with leading coefficient 1 on m_kappa.
pub fn jack_symmetric(kappa: &Partition, mode: &AlphaMode) -> Result<Arc<JackResult>, JackError> {
    jack_symmetric_via(kappa, mode, SymRoute::Auto)
}

/// S_{kappa+delta}(z; alpha) = Delta(z) P_kappa(z; alpha/(1+alpha)).
pub fn jack_antisymmetric(kappa: &Partition, mode: &AlphaMode) -> Result<Arc<JackResult>, JackError> {
    let n = kappa.n();
    let label = kappa.add(&Partition::delta(n)).parts().to_vec();
    let key = format!("S|{:?}|{}", kappa.parts(), mode);
    cached(key, || {
        let p = match mode {
            AlphaMode::Value(a) => {
                let one = BigRational::from_integer(1.into());
                let den = &one + a;
                if den == BigRational::from_integer(0.into()) {
                    return Err(JackError::PoleAt(mode.to_string()));
                }
                jack_symmetric(kappa, &AlphaMode::Value(a / den))?.poly.clone()
            }
            AlphaMode::Generic => {
                let alpha = mode.alpha();
                let shifted = alpha.checked_div(&(&FieldElement::one(mode.field()) + &alpha))?;
                jack_symmetric(kappa, mode)?.poly.specialize(&[(Param::Alpha, shifted)])?
            }
        };
        let poly = vandermonde(n, mode.field()).mul(&p);
        Ok(JackResult { family: JackFamily::Antisymmetric, label, poly, mode: mode.clone() })
    })
}

/// Coefficients of a symmetric polynomial (not necessarily homogeneous) in
/// the basis {P_mu}.
pub fn jack_basis_expand(f: &MPoly, mode: &AlphaMode) -> Result<BTreeMap<Partition, FieldElement>, JackError> {
    if !is_symmetric(f) {
        return Err(JackError::NotSymmetric);
    }
    let field = f.field().union(mode.field());
    let mut rest = SymPoly::from_mpoly(&f.with_field(field));
    let mut out = BTreeMap::new();
    // The lexicographically largest remaining partition never occurs in a
    // P_mu with mu lexicographically smaller.
    while let Some((mu, c)) = rest.leading().map(|(m, c)| (m.clone(), c.clone())) {
        let p = jack_symmetric_sym(&mu, mode, SymRoute::Auto)?;
        for (nu, d) in &p.coeffs {
            rest.add_term(nu.clone(), &-(&c * d));
        }
        debug_assert!(rest.coeff(&mu).is_zero());
        out.insert(mu, c);
    }
    Ok(out)
}

/// Expansion P_kappa(1 + x) = sum_mu c_mu P_mu(x).
pub fn shifted_expansion(kappa: &Partition, mode: &AlphaMode) -> Result<BTreeMap<Partition, FieldElement>, JackError> {
    let n = kappa.n();
    let field = mode.field();
    let p = jack_symmetric(kappa, mode)?;
    let mut plan = SubstPlan::identity(n, field);
    for i in 0..n {
        plan.set(i, Subst::Affine { target: i, scale: FieldElement::one(field), offset: FieldElement::one(field) });
    }
    jack_basis_expand(&substitute(&p.poly, &plan), mode)
}

/// Generalized binomial coefficient, or the rescaled quantity when the
/// normalization P_kappa(1^N) vanishes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Binomial {
    /// (kappa choose mu) = c_mu P_mu(1^N) / P_kappa(1^N).
    Ratio(FieldElement),
    /// P_kappa(1^N) (kappa choose mu) / P_mu(1^N) = c_mu.
    Rescaled(FieldElement),
}

impl Binomial {
    pub fn value(&self) -> &FieldElement {
        match self {
            Binomial::Ratio(v) | Binomial::Rescaled(v) => v,
        }
    }
}

pub fn binomial_coefficient(kappa: &Partition, mu: &Partition, mode: &AlphaMode) -> Result<Binomial, JackError> {
    if !kappa.contains(mu) {
        return Err(JackError::NotContained { kappa: kappa.parts().to_vec(), mu: mu.parts().to_vec() });
    }
    let exp = shifted_expansion(kappa, mode)?;
    let field = mode.field();
    let c = exp.get(mu).cloned().unwrap_or_else(|| FieldElement::zero(field));
    let pk1 = jack_symmetric_sym(kappa, mode, SymRoute::Auto)?.eval_ones();
    if pk1.is_zero() {
        return Ok(Binomial::Rescaled(c));
    }
    let pm1 = jack_symmetric_sym(mu, mode, SymRoute::Auto)?.eval_ones();
    Ok(Binomial::Ratio((&c * &pm1).checked_div(&pk1)?))
}

/// L+ f = sum_j df/dz_j.
pub fn highest_weight_apply(f: &MPoly) -> MPoly {
    let mut out = MPoly::zero(f.nvars(), f.field());
    for j in 0..f.nvars() {
        out = out.add(&apply_operator(f, &OperatorTag::Partial(j)));
    }
    out
}

/// L- f = sum_j z_j^2 df/dz_j - N_phi (sum_j z_j) f.
///
/// This is the first-order lowering operator; it annihilates the Laughlin
/// product prod (z_i - z_j)^2 with N_phi = 2(N-1), consistent with the Euler
/// relation sum_j z_j d_j f = (N/2) N_phi f.
pub fn lowest_weight_apply(f: &MPoly, n_phi: i64) -> MPoly {
    let n = f.nvars();
    let field = f.field();
    let mut out = MPoly::zero(n, field);
    for j in 0..n {
        let zj = MPoly::var(n, j, field);
        out = out.add(&zj.mul(&zj).mul(&apply_operator(f, &OperatorTag::Partial(j))));
        out = out.sub(&zj.mul(f).scale(&FieldElement::from_int(n_phi, field)));
    }
    out
}

/// The operator with second derivatives exactly as printed in the source
/// formula, sum_j z_j^2 d^2f/dz_j^2 + N_phi (sum_j z_j) f. Kept for the report;
/// it does not annihilate the Laughlin product.
pub fn lowest_weight_apply_printed(f: &MPoly, n_phi: i64) -> MPoly {
    let n = f.nvars();
    let field = f.field();
    let mut out = MPoly::zero(n, field);
    for j in 0..n {
        let zj = MPoly::var(n, j, field);
        let d2 = apply_operator(&apply_operator(f, &OperatorTag::Partial(j)), &OperatorTag::Partial(j));
        out = out.add(&zj.mul(&zj).mul(&d2));
        out = out.add(&zj.mul(f).scale(&FieldElement::from_int(n_phi, field)));
    }
    out
}

/// N_phi = 2|kappa|/N from the Euler relation.
pub fn n_phi(kappa: &Partition) -> Result<i64, JackError> {
    let two_m = 2 * kappa.modulus();
    let n = kappa.n();
    if n == 0 || two_m % n != 0 {
        return Err(JackError::NphiNotIntegral(two_m, n));
    }
    Ok((two_m / n) as i64)
}

#[cfg(test)]
mod tests;
