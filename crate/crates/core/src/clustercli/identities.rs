//! One check per identity id. Variables are 0-based throughout; Delta is
//! prod_{i<j} (z_i - z_j).

use num_integer::Integer;

use crate::exactnum::{rat, BigRational, FieldElement, ParamSet};
use crate::hermlag::{hermite, laguerre, verify_hw_coincidence, AMode, HermLagError, Label};
use crate::jackcore::{
    highest_weight_apply, jack_symmetric, jack_symmetric_sym, lowest_weight_apply, lowest_weight_apply_printed, n_phi,
    nonsymmetric, AlphaMode, JackError, SymPoly, SymRoute,
};
use crate::macdonald::{macdonald_nonsymmetric, macdonald_symmetric, t_symmetrize, MacError, QtMode, TSymMode};
use crate::mpoly::{
    d_l, pfaffian_product, substitute, symmetrize, vandermonde, MPoly, Monomial, PolyError, Subst, SubstPlan, SymMode,
};
use crate::partlib::{build_kappa, KappaData, Partition, PartitionError};

use super::{symcheck, ClusterError, IdentityCase, IdentityId, Outcome, Witness};

/// Either a failed precondition (reported as not-applicable) or a real error.
enum Fail {
    Na(String),
    Err(ClusterError),
}

macro_rules! into_fail {
    ($($t:ty),*) => {$(
        impl From<$t> for Fail {
            fn from(e: $t) -> Fail {
                Fail::Err(e.into())
            }
        }
    )*};
}

into_fail!(ClusterError, JackError, HermLagError, MacError, crate::exactnum::ExactError);

impl From<PartitionError> for Fail {
    fn from(e: PartitionError) -> Fail {
        Fail::Na(e.to_string())
    }
}

impl From<PolyError> for Fail {
    fn from(e: PolyError) -> Fail {
        Fail::Err(ClusterError::Config(e.to_string()))
    }
}

type R = Result<Outcome, Fail>;

fn na<T>(msg: impl Into<String>) -> Result<T, Fail> {
    Err(Fail::Na(msg.into()))
}

fn req(v: Option<usize>, name: &str) -> Result<usize, Fail> {
    v.ok_or_else(|| Fail::Na(format!("parameter {name} is required")))
}

pub(super) fn run(case: &IdentityCase) -> Result<Outcome, ClusterError> {
    use IdentityId::*;
    let res = match case.id {
        PROP1 => prop1(case),
        PROP2 => prop2(case),
        PROP3_H => prop3(case, false),
        PROP3_L => prop3(case, true),
        EQ14_1 => eq14_1(case),
        EQ14_2 => eq14_2(case),
        EQ12_1 => eq12_1(case),
        PROP4 => prop4(case),
        CLUSTER25_1 => cluster(case),
        RECT26 => rect26(case),
        NONSYM26_1 => nonsym_cluster(case),
        NONSYM22_1 => nonsym22(case),
        RR_J3A => rr(case),
        PFAFF => pfaff(case),
        HW_LP => hw_lp(case),
        LW_LM => lw_lm(case),
        B3B5 => b3b5(case),
        CONJ23_8 => conj_cluster(case),
        RECT_QT => rect_qt(case),
        QT_RR => qt_rr(case),
    };
    match res {
        Ok(o) => Ok(o),
        Err(Fail::Na(msg)) => Ok(Outcome::not_applicable(msg)),
        Err(Fail::Err(e)) => Err(e),
    }
}

// ---------------------------------------------------------------- helpers

fn jack_p(kappa: &Partition, alpha: BigRational) -> Result<MPoly, Fail> {
    Ok(jack_symmetric(kappa, &AlphaMode::Value(alpha))?.poly.clone())
}

fn jack_e(eta: &[usize], alpha: BigRational) -> Result<MPoly, Fail> {
    Ok(nonsymmetric(eta, &AlphaMode::Value(alpha))?.poly.clone())
}

/// kappa from the parameters (zero partition when absent), padded to n parts.
fn kappa_param(case: &IdentityCase, n: usize) -> Result<Partition, Fail> {
    match &case.params.kappa {
        None => Ok(Partition::zero(n)),
        Some(v) => Ok(Partition::new(v, n)?),
    }
}

fn odd(name: &str, v: usize) -> Result<usize, Fail> {
    if v % 2 == 1 {
        Ok(v)
    } else {
        na(format!("{name} = {v} must be odd"))
    }
}

fn even_positive(name: &str, v: usize) -> Result<usize, Fail> {
    if v > 0 && v % 2 == 0 {
        Ok(v)
    } else {
        na(format!("{name} = {v} must be even and positive"))
    }
}

fn unify(a: &MPoly, b: &MPoly) -> (MPoly, MPoly) {
    let field = a.field().union(b.field());
    (a.with_field(field), b.with_field(field))
}

/// Records lhs - rhs and returns whether it vanishes.
fn equal(out: &mut Outcome, name: &str, lhs: &MPoly, rhs: &MPoly) -> bool {
    let (l, r) = unify(lhs, rhs);
    let res = l.sub(&r);
    let ok = res.is_zero();
    out.witnesses.push(Witness::poly(name, &res));
    ok
}

/// Exact quotient f/g; on failure records the division remainder.
fn divide(out: &mut Outcome, name: &str, f: &MPoly, g: &MPoly) -> Result<Option<MPoly>, Fail> {
    let (f, g) = unify(f, g);
    match f.exact_divide(&g) {
        Ok(q) => Ok(Some(q)),
        Err(PolyError::NonDivisible { remainder }) => {
            out.witnesses.push(Witness::poly(name, &remainder));
            Ok(None)
        }
        Err(e) => Err(e.into()),
    }
}

/// lhs = c rhs with c the ratio of the coefficients at lhs's leading monomial.
/// Records c and the residual lhs - c rhs.
fn proportional(out: &mut Outcome, name: &str, lhs: &MPoly, rhs: &MPoly) -> Result<bool, Fail> {
    let (l, r) = unify(lhs, rhs);
    let field = l.field();
    let Some((m, cl)) = l.leading() else {
        out.notes.push(format!("{name}: left side vanishes identically"));
        let w = if r.is_zero() { MPoly::one(r.nvars(), field) } else { r.clone() };
        out.witnesses.push(Witness::poly(format!("{name}_residual"), &w));
        return Ok(false);
    };
    let cr = r.coeff(m);
    if cr.is_zero() {
        out.notes.push(format!("{name}: right side has no term at the leading monomial of the left side"));
        out.witnesses.push(Witness::poly(format!("{name}_residual"), &l));
        return Ok(false);
    }
    let c = cl.checked_div(&cr)?;
    let res = l.sub(&r.scale(&c));
    out.witnesses.push(Witness::scalar(format!("{name}_constant"), &c));
    let ok = res.is_zero();
    out.witnesses.push(Witness::poly(format!("{name}_residual"), &res));
    Ok(ok)
}

fn staircase(case: &IdentityCase) -> Result<(usize, usize, usize, usize, usize, KappaData), Fail> {
    let p = &case.params;
    let k = req(p.k, "k")?;
    let r = req(p.r, "r")?;
    let s = p.s.unwrap_or(1);
    let m = p.m.unwrap_or(k);
    let b = req(p.b, "b")?;
    let kd = build_kappa(k, r, s, m, b)?;
    if let Some(n) = p.n {
        if n != kd.n {
            return na(format!("N = {n} does not match kappa(k,r,s,m) with b = {b}, which has N = {}", kd.n));
        }
    }
    Ok((k, r, s, m, b, kd))
}

/// The partition left after removing the n0 coalesced variables and the
/// common part: kappa(k,r,1,m) with one interior block fewer, or 0^m.
fn reduced_kappa(k: usize, r: usize, m: usize, b: usize) -> Result<Partition, Fail> {
    if b == 0 {
        Ok(Partition::zero(m))
    } else {
        Ok(build_kappa(k, r, 1, m, b - 1)?.kappa)
    }
}

/// The same polynomial in `n2 >= f.nvars()` variables.
fn embed(f: &MPoly, n2: usize) -> MPoly {
    let n = f.nvars();
    MPoly::from_terms(
        n2,
        f.field(),
        f.terms().map(|(m, c)| {
            let mut e = Monomial::zero(n2);
            e.0[..n].copy_from_slice(&m.0);
            (e, c.clone())
        }),
    )
}

/// z_i - scale * z_j as a polynomial in n variables.
fn linear(n: usize, field: ParamSet, i: usize, j: usize, scale: &FieldElement) -> MPoly {
    MPoly::var(n, i, field).sub(&MPoly::var(n, j, field).scale(scale))
}

fn bump(case: &IdentityCase, e: usize) -> usize {
    e + usize::from(case.perturb)
}

fn rq(a: usize, b: usize) -> BigRational {
    rat(a as i64, b as i64)
}

fn neg_rq(a: usize, b: usize) -> BigRational {
    rat(-(a as i64), b as i64)
}

// ---------------------------------------------------------------- Jack, k = 1

fn prop1(case: &IdentityCase) -> R {
    let r = even_positive("r", req(case.params.r, "r")?)?;
    let n = req(case.params.n, "N")?;
    let kappa = kappa_param(case, n)?;
    let label = Partition::delta(n).scale(r).add(&kappa);
    let lhs = jack_p(&label, neg_rq(2, r - 1))?;
    let rhs = jack_p(&kappa, rq(2, r + 1))?;
    let mut out = Outcome::default();
    let e = bump(case, r);
    let delta = vandermonde(n, lhs.field()).pow(e as u32);
    out.ok = Some(match divide(&mut out, "remainder", &lhs, &delta)? {
        None => false,
        Some(q) => equal(&mut out, "residual", &q, &rhs),
    });
    Ok(out)
}

fn prop2(case: &IdentityCase) -> R {
    let l = odd("l", req(case.params.l, "l")?)?;
    let n = req(case.params.n, "N")?;
    let kappa = kappa_param(case, n)?;
    let label = Partition::delta(n).scale(l).add(&kappa);
    let lhs = jack_e(label.parts(), neg_rq(2, l))?;
    let rhs = jack_e(kappa.parts(), rq(2, l))?;
    let mut out = Outcome::default();
    let delta = vandermonde(n, lhs.field()).pow(bump(case, l) as u32);
    out.ok = Some(match divide(&mut out, "remainder", &lhs, &delta)? {
        None => false,
        Some(q) => equal(&mut out, "residual", &q, &rhs),
    });
    Ok(out)
}

/// Hermite (type A) or Laguerre (type B, symbolic a) image of a Jack label.
fn hl(label: &Label, alpha: BigRational, lag: bool) -> Result<MPoly, Fail> {
    let mode = AlphaMode::Value(alpha);
    Ok(if lag { laguerre(label, &mode, &AMode::Generic)?.as_ref().clone() } else { hermite(label, &mode)?.as_ref().clone() })
}

/// With l (odd): the nonsymmetric statement. With r (even): the symmetric one.
fn prop3(case: &IdentityCase, lag: bool) -> R {
    let n = req(case.params.n, "N")?;
    let kappa = kappa_param(case, n)?;
    let (e, lhs, rhs) = match (case.params.l, case.params.r) {
        (Some(l), None) => {
            let l = odd("l", l)?;
            let label = Partition::delta(n).scale(l).add(&kappa);
            let lhs = hl(&Label::Nonsymmetric(label.parts().to_vec()), neg_rq(2, l), lag)?;
            let rhs = hl(&Label::Nonsymmetric(kappa.parts().to_vec()), rq(2, l), lag)?;
            (l, lhs, rhs)
        }
        (None, Some(r)) => {
            let r = even_positive("r", r)?;
            let label = Partition::delta(n).scale(r).add(&kappa);
            let lhs = hl(&Label::Symmetric(label), neg_rq(2, r - 1), lag)?;
            let rhs = hl(&Label::Symmetric(kappa), rq(2, r + 1), lag)?;
            (r, lhs, rhs)
        }
        _ => return na("exactly one of l (odd) or r (even) is required"),
    };
    let mut out = Outcome::default();
    let delta = vandermonde(n, lhs.field()).pow(bump(case, e) as u32);
    out.ok = Some(match divide(&mut out, "remainder", &lhs, &delta)? {
        None => false,
        Some(q) => equal(&mut out, "residual", &q, &rhs),
    });
    Ok(out)
}

fn eq14_1(case: &IdentityCase) -> R {
    let l = odd("l", req(case.params.l, "l")?)?;
    let n = req(case.params.n, "N")?;
    let label = Partition::delta(n).scale(l);
    let alpha = neg_rq(2, l);
    let e = jack_e(label.parts(), alpha.clone())?;
    let lab = Label::Nonsymmetric(label.parts().to_vec());
    let h = hl(&lab, alpha.clone(), false)?;
    let lg = hl(&lab, alpha, true)?;
    let target = vandermonde(n, ParamSet::EMPTY).pow(bump(case, l) as u32);
    let mut out = Outcome::default();
    let a = equal(&mut out, "jack_residual", &e, &target);
    let b = equal(&mut out, "hermite_residual", &h, &target);
    let c = equal(&mut out, "laguerre_residual", &lg, &target);
    out.ok = Some(a && b && c);
    Ok(out)
}

fn eq14_2(case: &IdentityCase) -> R {
    let r = even_positive("r", req(case.params.r, "r")?)?;
    let n = req(case.params.n, "N")?;
    let label = Partition::delta(n).scale(r);
    let alpha = neg_rq(2, r - 1);
    let p = jack_p(&label, alpha.clone())?;
    let lab = Label::Symmetric(label);
    let h = hl(&lab, alpha.clone(), false)?;
    let lg = hl(&lab, alpha, true)?;
    let target = vandermonde(n, ParamSet::EMPTY).pow(bump(case, r) as u32);
    let mut out = Outcome::default();
    let a = equal(&mut out, "jack_residual", &p, &target);
    let b = equal(&mut out, "hermite_residual", &h, &target);
    let c = equal(&mut out, "laguerre_residual", &lg, &target);
    out.ok = Some(a && b && c);
    Ok(out)
}

/// Symmetrized form of the nonsymmetric factorization. The right side is
/// taken at alpha = -2/(r-1), the value at which the symmetrization of the
/// nonsymmetric identity holds.
fn eq12_1(case: &IdentityCase) -> R {
    let r = even_positive("r", req(case.params.r, "r")?)?;
    let n = req(case.params.n, "N")?;
    let kappa = kappa_param(case, n)?;
    let d = Partition::delta(n);
    let e_small = jack_e(kappa.add(&d).parts(), rq(2, r - 1))?;
    let e_big = jack_e(d.scale(r).add(&kappa).parts(), neg_rq(2, r - 1))?;
    let delta = vandermonde(n, ParamSet::EMPTY).pow(bump(case, r - 1) as u32);
    let lhs = delta.mul(&symmetrize(&e_small, SymMode::Asym));
    let rhs = symmetrize(&e_big, SymMode::Sym);
    let mut out = Outcome::default();
    out.ok = Some(proportional(&mut out, "sym", &lhs, &rhs)?);
    Ok(out)
}

// ---------------------------------------------------------------- Macdonald, k = 1

fn prop4(case: &IdentityCase) -> R {
    let r = even_positive("r", req(case.params.r, "r")?)?;
    let n = req(case.params.n, "N")?;
    let kappa = kappa_param(case, n)?;
    // q = p^2, so q^{1/2} = p.
    let lhs_mode = QtMode::p_exact(2, -(r as i64 - 1));
    let rhs_mode = QtMode::p_exact(2, r as i64 + 1);
    let label = Partition::delta(n).scale(r).add(&kappa);
    let lhs = macdonald_symmetric(&label, &lhs_mode)?;
    let rhs = macdonald_symmetric(&kappa, &rhs_mode)?;
    let p = lhs_mode.p();
    let power = r * r * n * (n - 1) / 8;
    let pref = (-p.inv()?).pow(bump(case, power) as i64)?;
    let d = d_l(n, (r / 2) as u32, &p);
    let claimed = d.mul(&rhs).scale(&pref);
    let mut out = Outcome::default();
    out.witnesses.push(Witness::scalar("prefactor", &pref));
    out.ok = Some(equal(&mut out, "residual", &lhs, &claimed));
    Ok(out)
}

fn nonsym22(case: &IdentityCase) -> R {
    let l = odd("l", req(case.params.l, "l")?)?;
    let n = req(case.params.n, "N")?;
    let kappa = kappa_param(case, n)?;
    // q = p^2, t = q^{-l/2} = p^{-l}.
    let mode = QtMode::p_exact(2, -(l as i64));
    let label = Partition::delta(n).scale(l).add(&kappa);
    let e = macdonald_nonsymmetric(label.parts(), &mode)?;
    let mut out_notes = Vec::new();
    let field = mode.field();
    let p = mode.p();
    // E = D_{(l-1)/2}(z; q^{1/2}) prod_{a<b} (z_a - q^{l/2} z_b) f with f
    // homogeneous of degree |kappa|.
    let d = d_l(n, ((l - 1) / 2) as u32, &p);
    let c = p.pow(l as i64)?;
    let mut prod = MPoly::one(n, field);
    for i in 0..n {
        for j in i + 1..n {
            prod = prod.mul(&linear(n, field, i, j, &c));
        }
    }
    {
        // Literal form: D_{(l-1)/2}(z; q) prod_{i<j} (q^{(l-1)/2} z_j - z_i).
        let q = mode.q();
        let lc = q.pow(((l - 1) / 2) as i64)?;
        let mut lit = d_l(n, ((l - 1) / 2) as u32, &q);
        for i in 0..n {
            for j in i + 1..n {
                lit = lit.mul(&MPoly::var(n, j, field).scale(&lc).sub(&MPoly::var(n, i, field)));
            }
        }
        let divides = e.exact_divide(&lit).is_ok();
        out_notes.push(format!("literal product form {}", if divides { "divides" } else { "does not divide" }));
    }
    if case.perturb {
        prod = prod.mul(&prod);
    }
    let mut out = Outcome { notes: out_notes, ..Outcome::default() };
    out.ok = Some(match divide(&mut out, "remainder", &e, &d.mul(&prod))? {
        None => false,
        Some(f) => {
            let hom = f.is_homogeneous() && f.degree() == Some(kappa.modulus() as u32);
            if !hom {
                out.notes.push(format!("cofactor has degree {:?}, expected homogeneous of degree {}", f.degree(), kappa.modulus()));
            }
            out.witnesses.push(Witness::poly("cofactor", &f));
            hom
        }
    });
    Ok(out)
}

// ---------------------------------------------------------------- Jack, k > 1

/// Coalesces the last n0 variables into a new last variable z.
fn coalesce_last(f: &MPoly, n0: usize) -> MPoly {
    let n = f.nvars();
    let coalesced: Vec<usize> = (n - n0..n).collect();
    substitute(f, &SubstPlan::coalesce(n, &coalesced, f.field()))
}

/// prod_{j < kept} (z_j - z)^e in kept + 1 variables, z last.
fn cluster_factor(kept: usize, e: usize, field: ParamSet) -> MPoly {
    let n = kept + 1;
    let one = FieldElement::one(field);
    let mut f = MPoly::one(n, field);
    for j in 0..kept {
        f = f.mul(&linear(n, field, j, kept, &one).pow(e as u32));
    }
    f
}

/// Above this many variables the Jack-family checks run in the monomial
/// symmetric basis instead of on the full expansion.
const EXPAND_MAX_N: usize = 6;

fn jack_sym(kappa: &Partition, alpha: BigRational) -> Result<SymPoly, Fail> {
    Ok(jack_symmetric_sym(kappa, &AlphaMode::Value(alpha), SymRoute::Auto)?)
}

fn cluster(case: &IdentityCase) -> R {
    let (k, r, s, m, b, kd) = staircase(case)?;
    if kd.n > EXPAND_MAX_N {
        return cluster_sym(case);
    }
    let p = jack_p(&kd.kappa, kd.alpha.clone())?;
    let kept = kd.n - kd.n0;
    let f = coalesce_last(&p, kd.n0);
    let e = bump(case, (r - 1) * s + 1);
    let mut out = Outcome::default();
    out.ok = Some(match divide(&mut out, "remainder", &f, &cluster_factor(kept, e, f.field()))? {
        None => false,
        Some(quot) => {
            let red = reduced_kappa(k, r, m, b)?;
            let pr = embed(&jack_p(&red, kd.alpha.clone())?, kept + 1);
            out.notes.push(format!("kappa = {:?}, quotient label {:?}", kd.kappa.parts(), red.parts()));
            equal(&mut out, "residual", &quot, &pr)
        }
    });
    Ok(out)
}

/// Verdict of the monomial-basis route regardless of N.
#[cfg(test)]
pub(super) fn cluster_sym_holds(case: &IdentityCase) -> Option<bool> {
    cluster_sym(case).ok().and_then(|o| o.ok)
}

fn cluster_sym(case: &IdentityCase) -> R {
    let (k, r, s, m, b, kd) = staircase(case)?;
    let p = jack_sym(&kd.kappa, kd.alpha.clone())?;
    let kept = kd.n - kd.n0;
    let lhs = symcheck::coalesce_last(&p, kd.n0);
    let e = bump(case, (r - 1) * s + 1);
    let red = reduced_kappa(k, r, m, b)?;
    let pr = jack_sym(&red, kd.alpha.clone())?;
    let rhs = symcheck::mul_sym(&symcheck::cluster_factor(kept, e, lhs.field), &pr);
    let res = lhs.sub(&rhs);
    let mut out = Outcome::default();
    out.notes.push(format!("kappa = {:?}, quotient label {:?}", kd.kappa.parts(), red.parts()));
    out.notes.push("checked in the monomial symmetric basis of the kept variables".into());
    out.witnesses.push(Witness::sym("residual", res.to_text(), res.is_zero()));
    out.ok = Some(res.is_zero());
    Ok(out)
}

fn rect_params(case: &IdentityCase) -> Result<(usize, usize, usize), Fail> {
    let r = req(case.params.r, "r")?;
    let g = req(case.params.g, "g")?;
    let n = req(case.params.n, "N")?;
    if r < 2 || g == 0 {
        return na("need r >= 2 and g >= 1");
    }
    if n < 2 * g {
        return na(format!("need N >= 2g (N = {n}, g = {g})"));
    }
    if (n + 1 - g).gcd(&(r - 1)) != 1 {
        return na(format!("N+1-g = {} and r-1 = {} are not coprime", n + 1 - g, r - 1));
    }
    Ok((r, g, n))
}

fn rect_kappa(r: usize, g: usize, n: usize) -> Result<Partition, Fail> {
    Ok(Partition::new(&vec![r; g], n)?)
}

fn rect26(case: &IdentityCase) -> R {
    let (r, g, n) = rect_params(case)?;
    let p = jack_p(&rect_kappa(r, g, n)?, neg_rq(n + 1 - g, r - 1))?;
    let field = p.field();
    let one = FieldElement::one(field);
    let mut plan = SubstPlan::identity(n, field);
    for i in g..n {
        plan.set(i, Subst::Const(one.clone()));
    }
    plan.new_nvars = g;
    let f = substitute(&p, &plan);
    let mut target = MPoly::one(g, field);
    for l in 0..g {
        let lin = MPoly::var(g, l, field).sub(&MPoly::one(g, field));
        target = target.mul(&lin.pow(bump(case, r) as u32));
    }
    let mut out = Outcome::default();
    out.ok = Some(equal(&mut out, "residual", &f, &target));
    Ok(out)
}

fn nonsym_cluster(case: &IdentityCase) -> R {
    let (_, r, s, _, _, kd) = staircase(case)?;
    let e = jack_e(kd.kappa.parts(), kd.alpha.clone())?;
    let kept = kd.n - kd.n0;
    let f = coalesce_last(&e, kd.n0);
    let ex = bump(case, (r - 1) * s);
    let mut out = Outcome::default();
    out.ok = Some(match divide(&mut out, "remainder", &f, &cluster_factor(kept, ex, f.field()))? {
        None => false,
        Some(cof) => {
            let next = cluster_factor(kept, 1, f.field());
            let more = cof.exact_divide(&next).is_ok();
            out.notes.push(format!("cofactor divisible by one further power: {more}"));
            out.witnesses.push(Witness::poly("cofactor", &cof));
            true
        }
    });
    Ok(out)
}

fn rr(case: &IdentityCase) -> R {
    let k = req(case.params.k, "k")?;
    let n = req(case.params.n, "N")?;
    if k == 0 || n < 2 {
        return na("need k >= 1 and N >= 2");
    }
    let total = k * n;
    let groups: Vec<Vec<usize>> = (0..k).map(|g| (g * n..(g + 1) * n).collect()).collect();
    let prod = crate::mpoly::group_vandermonde(total, &groups, bump(case, 2) as u32, ParamSet::EMPTY);
    let psi = symmetrize(&prod, SymMode::Sym);
    let mut parts: Vec<usize> = Vec::new();
    for i in 0..n {
        parts.extend(std::iter::repeat(2 * (n - 1 - i)).take(k));
    }
    let kappa = Partition::new(&parts, total)?;
    let p = jack_p(&kappa, rat(-(k as i64) - 1, 1))?;
    let mut out = Outcome::default();
    out.notes.push(format!("kappa = {:?}", kappa.parts()));
    out.ok = Some(proportional(&mut out, "psi", &psi, &p)?);
    Ok(out)
}

fn pfaff(case: &IdentityCase) -> R {
    let n = req(case.params.n, "N")?;
    let r = case.params.r.unwrap_or(2);
    if n < 4 || n % 2 == 1 {
        return na(format!("N = {n} must be even and at least 4"));
    }
    if r < 2 || r % 2 == 1 {
        return na(format!("r = {r} must be even for a symmetric product"));
    }
    let kd = build_kappa(2, r, 1, 2, (n - 4) / 2)?;
    let pf = pfaffian_product(n, ParamSet::EMPTY).map_err(ClusterError::Config)?;
    // pfaffian_product already carries one power of Delta.
    let extra = bump(case, r - 1) - 1;
    let psi = pf.mul(&vandermonde(n, ParamSet::EMPTY).pow(extra as u32));
    let p = jack_p(&kd.kappa, kd.alpha.clone())?;
    let mut out = Outcome::default();
    out.notes.push(format!("kappa = {:?}", kd.kappa.parts()));
    out.ok = Some(proportional(&mut out, "pfaffian", &psi, &p)?);
    Ok(out)
}

/// kappa and alpha for the highest-weight families: staircase when k is
/// given, rectangular when g is given.
fn hw_family(case: &IdentityCase) -> Result<(Partition, BigRational), Fail> {
    if case.params.g.is_some() {
        let (r, g, n) = rect_params(case)?;
        Ok((rect_kappa(r, g, n)?, neg_rq(n + 1 - g, r - 1)))
    } else {
        let (.., kd) = staircase(case)?;
        Ok((kd.kappa, kd.alpha))
    }
}

fn flip(case: &IdentityCase, alpha: BigRational) -> BigRational {
    if case.perturb {
        -alpha
    } else {
        alpha
    }
}

fn hw_lp(case: &IdentityCase) -> R {
    let (kappa, alpha) = hw_family(case)?;
    let alpha = flip(case, alpha);
    let mut out = Outcome::default();
    if kappa.n() > EXPAND_MAX_N {
        let res = jack_sym(&kappa, alpha)?.highest_weight();
        out.ok = Some(res.is_zero());
        out.witnesses.push(Witness::sym("residual", res.to_text(), res.is_zero()));
        return Ok(out);
    }
    let p = jack_p(&kappa, alpha)?;
    let res = highest_weight_apply(&p);
    out.ok = Some(res.is_zero());
    out.witnesses.push(Witness::poly("residual", &res));
    Ok(out)
}

fn lw_lm(case: &IdentityCase) -> R {
    let (k, _, s, m, _, kd) = staircase(case)?;
    if s != 1 || m != k {
        return na("the lowest weight condition is checked for s = 1, m = k");
    }
    let nphi = n_phi(&kd.kappa).map_err(|e| Fail::Na(e.to_string()))?;
    let used = nphi + i64::from(case.perturb);
    if kd.n > EXPAND_MAX_N {
        let p = jack_sym(&kd.kappa, kd.alpha.clone())?;
        let res = p.lowest_weight(used);
        let mut out = Outcome::default();
        out.notes.push(format!("N_phi = {used}"));
        out.notes.push(format!("second-order form annihilates: {}", p.lowest_weight_printed(nphi).is_zero()));
        out.ok = Some(res.is_zero());
        out.witnesses.push(Witness::sym("residual", res.to_text(), res.is_zero()));
        return Ok(out);
    }
    let p = jack_p(&kd.kappa, kd.alpha.clone())?;
    let res = lowest_weight_apply(&p, used);
    let printed = lowest_weight_apply_printed(&p, nphi);
    let mut out = Outcome::default();
    out.notes.push(format!("N_phi = {used}"));
    out.notes.push(format!("second-order form annihilates: {}", printed.is_zero()));
    out.ok = Some(res.is_zero());
    out.witnesses.push(Witness::poly("residual", &res));
    Ok(out)
}

fn b3b5(case: &IdentityCase) -> R {
    let (kappa, alpha) = hw_family(case)?;
    let mode = AlphaMode::Value(flip(case, alpha));
    let hw = verify_hw_coincidence(&kappa, &mode, &AMode::Generic)?;
    let mut out = Outcome::default();
    if !hw.precondition {
        let p = jack_symmetric(&kappa, &mode)?.poly.clone();
        out.witnesses.push(Witness::poly("highest_weight_residual", &highest_weight_apply(&p)));
        out.notes.push("P_kappa is not annihilated by L+; the coincidence is not claimed".into());
        return Ok(out);
    }
    for (name, r) in [
        ("laguerre_residual", &hw.laguerre_residual),
        ("laguerre_binomial_residual", &hw.laguerre_binomial_residual),
        ("hermite_residual", &hw.hermite_residual),
    ] {
        if let Some(p) = r {
            out.witnesses.push(Witness::poly(name, p));
        }
    }
    out.ok = Some(hw.holds());
    Ok(out)
}

// ---------------------------------------------------------------- Macdonald conjectures

/// Sends z_i -> p^{exps[i]} z (z last) for i < exps.len() and keeps the
/// remaining variables in order.
fn geometric_coalesce(f: &MPoly, p: &FieldElement, exps: &[i64]) -> Result<MPoly, Fail> {
    let n = f.nvars();
    let c = exps.len();
    let kept = n - c;
    let field = f.field();
    let mut plan = SubstPlan::identity(n, field);
    plan.new_nvars = kept + 1;
    for i in 0..n {
        if i < c {
            plan.set(i, Subst::Var { target: kept, scale: p.pow(exps[i])? });
        } else {
            plan.set(i, Subst::Var { target: i - c, scale: FieldElement::one(field) });
        }
    }
    Ok(substitute(f, &plan))
}

/// prod_{i < kept} prod_{e in exps} (z_i - p^e z), z last.
fn shifted_factor(kept: usize, p: &FieldElement, exps: &[i64]) -> Result<MPoly, Fail> {
    let n = kept + 1;
    let field = p.vars();
    let mut f = MPoly::one(n, field);
    for i in 0..kept {
        for &e in exps {
            f = f.mul(&linear(n, field, i, kept, &p.pow(e)?));
        }
    }
    Ok(f)
}

fn conj_cluster(case: &IdentityCase) -> R {
    let (k, r, s, m, b, kd) = staircase(case)?;
    // alpha = -(k+1)/(r-1); q = p^{k+1}, t = q^{1/alpha} = p^{-(r-1)}.
    let (k1, r1) = ((k + 1) as i64, (r - 1) as i64);
    let mode = QtMode::p_exact(k1, -r1);
    let p = mode.p();
    let pk = macdonald_symmetric(&kd.kappa, &mode)?;
    // z_i = q^{(i-1)/alpha} z = p^{-(r-1)(i-1)} z for the first n0 variables.
    let exps: Vec<i64> = (0..kd.n0 as i64).map(|i| -r1 * i).collect();
    let f = geometric_coalesce(&pk, &p, &exps)?;
    let kept = kd.n - kd.n0;
    // q^{k/alpha + j} = p^{-k(r-1) + j(k+1)}, j = -(r-1)(s-1) .. r-1.
    let jmax = r1 + i64::from(case.perturb);
    let shifts: Vec<i64> = (-r1 * (s as i64 - 1)..=jmax).map(|j| -(k as i64) * r1 + j * k1).collect();
    let factor = shifted_factor(kept, &p, &shifts)?;
    let mut out = Outcome::default();
    out.ok = Some(match divide(&mut out, "remainder", &f, &factor)? {
        None => false,
        Some(quot) => {
            let red = reduced_kappa(k, r, m, b)?;
            let pr = embed(macdonald_symmetric(&red, &mode)?.as_ref(), kept + 1);
            out.notes.push(format!("kappa = {:?}, mode {mode}", kd.kappa.parts()));
            equal(&mut out, "residual", &quot, &pr)
        }
    });
    Ok(out)
}

fn rect_qt(case: &IdentityCase) -> R {
    let (r, g, n) = rect_params(case)?;
    // alpha = -(N+1-g)/(r-1); q = p^{N+1-g}, q^{1/alpha} = p^{-(r-1)}.
    let (d, r1) = ((n + 1 - g) as i64, (r - 1) as i64);
    let mode = QtMode::p_exact(d, -r1);
    let p = mode.p();
    let pk = macdonald_symmetric(&rect_kappa(r, g, n)?, &mode)?;
    let exps: Vec<i64> = (0..(n - g) as i64).map(|i| -r1 * i).collect();
    let f = geometric_coalesce(&pk, &p, &exps)?;
    // The shift that matches the staircase case with k = N-g is
    // q^{(N-g)/alpha + j} = p^{-(N-g)(r-1) + j(N+1-g)}, j = 0..r-1.
    // The literal q^{1/alpha + j} shift is checked as well and reported in a note.
    let c = (n - g) as i64;
    let jmax = r1 + i64::from(case.perturb);
    let shifts: Vec<i64> = (0..=jmax).map(|j| -c * r1 + j * d).collect();
    let target = shifted_factor(g, &p, &shifts)?;
    let literal: Vec<i64> = (0..=jmax).map(|j| -r1 + j * d).collect();
    let literal_ok = f == shifted_factor(g, &p, &literal)?;
    let mut out = Outcome::default();
    out.notes.push(format!("mode {mode}"));
    out.notes.push(format!("shift q^(1/alpha + j) {}", if literal_ok { "also matches" } else { "does not match" }));
    out.ok = Some(equal(&mut out, "residual", &f, &target));
    Ok(out)
}

fn qt_rr(case: &IdentityCase) -> R {
    let k = req(case.params.k, "k")?;
    let n = req(case.params.n, "N")?;
    if k == 0 || n < 2 {
        return na("need k >= 1 and N >= 2 particles per group");
    }
    let total = k * n;
    // t = q^{-1/(k+1)}: q = p^{k+1}, t = p^{-1}.
    let mode = QtMode::p_exact(k as i64 + 1, -1);
    let field = mode.field();
    let t = mode.t();
    let mut prod = MPoly::one(total, field);
    let power = bump(case, 1) as u32;
    for g in 0..k {
        for i in g * n..(g + 1) * n {
            for j in i + 1..(g + 1) * n {
                let a = linear(total, field, i, j, &t);
                let b = MPoly::var(total, i, field).scale(&t).sub(&MPoly::var(total, j, field));
                prod = prod.mul(&a.mul(&b).pow(power));
            }
        }
    }
    let psi = t_symmetrize(&prod, TSymMode::Plus, &t);
    let kd = build_kappa(k, 2, 1, k, n - 2)?;
    let p = macdonald_symmetric(&kd.kappa, &mode)?;
    let mut out = Outcome::default();
    out.notes.push(format!("kappa = {:?}, mode {mode}", kd.kappa.parts()));
    out.ok = Some(proportional(&mut out, "psi", &psi, &p)?);
    Ok(out)
}
