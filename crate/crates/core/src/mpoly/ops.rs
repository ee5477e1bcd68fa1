use std::collections::HashMap;

use crate::exactnum::{FieldElement, ParamSet};

use super::poly::{MPoly, Monomial};

/// Image of one variable under a substitution.
#[derive(Clone, Debug)]
pub enum Subst {
    /// `z_i -> scale * w_target`
    Var { target: usize, scale: FieldElement },
    /// `z_i -> value`
    Const(FieldElement),
    /// `z_i -> scale * w_target + offset`
    Affine { target: usize, scale: FieldElement, offset: FieldElement },
}

/// Per-variable substitution into a polynomial ring with `new_nvars` variables.
#[derive(Clone, Debug)]
pub struct SubstPlan {
    pub new_nvars: usize,
    pub images: Vec<Subst>,
}

impl SubstPlan {
    pub fn identity(n: usize, field: ParamSet) -> SubstPlan {
        SubstPlan {
            new_nvars: n,
            images: (0..n).map(|i| Subst::Var { target: i, scale: FieldElement::one(field) }).collect(),
        }
    }

    /// Keeps the variables not in `coalesced` (renumbered in order) and sends
    /// every variable in `coalesced` to one fresh variable placed last.
    pub fn coalesce(n: usize, coalesced: &[usize], field: ParamSet) -> SubstPlan {
        let kept = n - coalesced.len();
        let mut next = 0;
        let images = (0..n)
            .map(|i| {
                let target = if coalesced.contains(&i) {
                    kept
                } else {
                    next += 1;
                    next - 1
                };
                Subst::Var { target, scale: FieldElement::one(field) }
            })
            .collect();
        SubstPlan { new_nvars: kept + 1, images }
    }

    pub fn set(&mut self, i: usize, s: Subst) -> &mut SubstPlan {
        self.images[i] = s;
        self
    }
}

/// Applies a substitution plan.
pub fn substitute(f: &MPoly, plan: &SubstPlan) -> MPoly {
    assert_eq!(plan.images.len(), f.nvars(), "plan length");
    let n2 = plan.new_nvars;
    let mut field = f.field();
    for s in &plan.images {
        match s {
            Subst::Var { scale, .. } => field = field.union(scale.vars()),
            Subst::Const(c) => field = field.union(c.vars()),
            Subst::Affine { scale, offset, .. } => field = field.union(scale.vars()).union(offset.vars()),
        }
    }
    let mut scalar_pow: HashMap<(usize, u16), FieldElement> = HashMap::new();
    let mut affine_pow: HashMap<(usize, u16), MPoly> = HashMap::new();
    let mut out = MPoly::zero(n2, field);
    for (m, c) in f.terms() {
        let mut mono = Monomial::zero(n2);
        let mut coef = c.clone();
        let mut affine_factors: Vec<(usize, u16)> = Vec::new();
        for (i, &e) in m.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            match &plan.images[i] {
                Subst::Var { target, scale } => {
                    mono.0[*target] += e;
                    if !scale.is_one() {
                        let p = scalar_pow.entry((i, e)).or_insert_with(|| scale.pow(e as i64).unwrap());
                        coef = &coef * &*p;
                    }
                }
                Subst::Const(v) => {
                    let p = scalar_pow.entry((i, e)).or_insert_with(|| v.pow(e as i64).unwrap());
                    coef = &coef * &*p;
                }
                Subst::Affine { .. } => affine_factors.push((i, e)),
            }
            if coef.is_zero() {
                break;
            }
        }
        if coef.is_zero() {
            continue;
        }
        if affine_factors.is_empty() {
            out.add_term(mono, &coef);
            continue;
        }
        let mut acc = MPoly::monomial(n2, field, mono, coef);
        for (i, e) in affine_factors {
            let p = affine_pow.entry((i, e)).or_insert_with(|| {
                let Subst::Affine { target, scale, offset } = &plan.images[i] else { unreachable!() };
                let lin = MPoly::var(n2, *target, field).scale(scale).add(&MPoly::constant(n2, offset.clone()));
                lin.pow(e as u32)
            });
            acc = acc.mul(p);
        }
        out = out.add(&acc);
    }
    out
}

/// Elementary operators acting on polynomials. Indices are 0-based.
#[derive(Clone, Debug)]
pub enum OperatorTag {
    /// Exchange of z_i and z_j.
    Swap(usize, usize),
    /// z_i -> -z_i.
    Reflect(usize),
    /// z_i -> q z_i.
    QShift(usize, FieldElement),
    /// d/dz_i.
    Partial(usize),
    /// z_i d/dz_i.
    Euler(usize),
    /// (1 - s_ik)/(z_i - z_k).
    DividedDiff(usize, usize),
}

pub fn apply_operator(f: &MPoly, tag: &OperatorTag) -> MPoly {
    let n = f.nvars();
    let field = f.field();
    match tag {
        OperatorTag::Swap(i, j) => {
            assert!(*i < n && *j < n);
            MPoly::from_terms(
                n,
                field,
                f.terms().map(|(m, c)| {
                    let mut m2 = m.clone();
                    m2.0.swap(*i, *j);
                    (m2, c.clone())
                }),
            )
        }
        OperatorTag::Reflect(i) => {
            assert!(*i < n);
            MPoly::from_terms(n, field, f.terms().map(|(m, c)| (m.clone(), if m.0[*i] % 2 == 1 { -c } else { c.clone() })))
        }
        OperatorTag::QShift(i, q) => {
            assert!(*i < n);
            let mut pows: HashMap<u16, FieldElement> = HashMap::new();
            MPoly::from_terms(
                n,
                field.union(q.vars()),
                f.terms().map(|(m, c)| {
                    let e = m.0[*i];
                    let p = pows.entry(e).or_insert_with(|| q.pow(e as i64).unwrap());
                    (m.clone(), c * &*p)
                }),
            )
        }
        OperatorTag::Partial(i) => {
            assert!(*i < n);
            MPoly::from_terms(
                n,
                field,
                f.terms().filter(|(m, _)| m.0[*i] > 0).map(|(m, c)| {
                    let e = m.0[*i];
                    let mut m2 = m.clone();
                    m2.0[*i] -= 1;
                    (m2, c * &FieldElement::from_int(e as i64, field))
                }),
            )
        }
        OperatorTag::Euler(i) => {
            assert!(*i < n);
            MPoly::from_terms(
                n,
                field,
                f.terms().map(|(m, c)| (m.clone(), c * &FieldElement::from_int(m.0[*i] as i64, field))),
            )
        }
        OperatorTag::DividedDiff(i, k) => divided_difference(f, *i, *k),
    }
}

/// `(f - s_ik f)/(z_i - z_k)` from the closed form of the quotient on each
/// monomial.
pub fn divided_difference(f: &MPoly, i: usize, k: usize) -> MPoly {
    assert!(i != k && i < f.nvars() && k < f.nvars());
    let mut out = MPoly::zero(f.nvars(), f.field());
    for (m, c) in f.terms() {
        let a = m.0[i];
        let b = m.0[k];
        if a == b {
            continue;
        }
        // (z_i^a z_k^b - z_i^b z_k^a)/(z_i - z_k)
        let (lo, d, sign) = if a > b { (b, a - b, false) } else { (a, b - a, true) };
        let coef = if sign { -c } else { c.clone() };
        for j in 0..d {
            let mut m2 = m.clone();
            if sign {
                m2.0[i] = lo + j;
                m2.0[k] = lo + d - 1 - j;
            } else {
                m2.0[i] = lo + d - 1 - j;
                m2.0[k] = lo + j;
            }
            out.add_term(m2, &coef);
        }
    }
    out
}

/// Same operator computed by explicit exact division; aborts if the
/// numerator is not divisible, which would indicate a bug upstream.
pub fn divided_difference_by_division(f: &MPoly, i: usize, k: usize) -> MPoly {
    let n = f.nvars();
    let num = f.sub(&apply_operator(f, &OperatorTag::Swap(i, k)));
    let den = MPoly::var(n, i, f.field()).sub(&MPoly::var(n, k, f.field()));
    match num.exact_divide(&den) {
        Ok(q) => q,
        Err(e) => panic!("divided difference not exact: {e}"),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SymMode {
    Sym,
    Asym,
}

/// All permutations of 0..n in lexicographic order, with their signs.
pub fn permutations(n: usize) -> Vec<(Vec<usize>, i32)> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        out.push((p.clone(), perm_sign(&p)));
        // next permutation
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else { break };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).unwrap();
        p.swap(i - 1, j);
        p[i..].reverse();
    }
    out
}

pub fn perm_sign(p: &[usize]) -> i32 {
    let mut seen = vec![false; p.len()];
    let mut sign = 1;
    for s in 0..p.len() {
        if seen[s] {
            continue;
        }
        let mut len = 0;
        let mut j = s;
        while !seen[j] {
            seen[j] = true;
            j = p[j];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

/// Sum of `f(z_{w(1)},...,z_{w(N)})` over all permutations w (signed for Asym),
/// evaluated orbit by orbit.
pub fn symmetrize(f: &MPoly, mode: SymMode) -> MPoly {
    let n = f.nvars();
    let field = f.field();
    let mut out = MPoly::zero(n, field);
    for (m, c) in f.terms() {
        let e: Vec<u16> = m.0.to_vec();
        let mut sorted = e.clone();
        sorted.sort_unstable();
        let has_repeat = sorted.windows(2).any(|w| w[0] == w[1]);
        match mode {
            SymMode::Sym => {
                // Each distinct rearrangement appears |stabilizer| times.
                let mut stab: u64 = 1;
                let mut run = 1u64;
                for w in sorted.windows(2) {
                    if w[0] == w[1] {
                        run += 1;
                        stab *= run;
                    } else {
                        run = 1;
                    }
                }
                let coef = c * &FieldElement::from_int(stab as i64, field);
                for arr in distinct_rearrangements(&sorted) {
                    out.add_term(Monomial::from_slice(&arr), &coef);
                }
            }
            SymMode::Asym => {
                if has_repeat {
                    continue;
                }
                // Sign of the rearrangement relative to e.
                for (w, s) in permutations(n) {
                    let arr: Vec<u16> = w.iter().map(|&j| e[j]).collect();
                    let coef = if s < 0 { -c } else { c.clone() };
                    out.add_term(Monomial::from_slice(&arr), &coef);
                }
            }
        }
    }
    out
}

/// Symmetrization by the literal permutation sum; used as a reference.
pub fn symmetrize_explicit(f: &MPoly, mode: SymMode) -> MPoly {
    let n = f.nvars();
    let mut out = MPoly::zero(n, f.field());
    for (w, s) in permutations(n) {
        for (m, c) in f.terms() {
            // f(z_{w(1)},...,z_{w(N)}) sends z_j^{e_j} to z_{w(j)}^{e_j}.
            let mut m2 = Monomial::zero(n);
            for j in 0..n {
                m2.0[w[j]] = m.0[j];
            }
            let coef = if mode == SymMode::Asym && s < 0 { -c } else { c.clone() };
            out.add_term(m2, &coef);
        }
    }
    out
}

/// Distinct rearrangements of a multiset given in ascending order.
pub fn distinct_rearrangements(sorted_asc: &[u16]) -> Vec<Vec<u16>> {
    let mut p = sorted_asc.to_vec();
    let n = p.len();
    let mut out = Vec::new();
    loop {
        out.push(p.clone());
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else { break };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).unwrap();
        p.swap(i - 1, j);
        p[i..].reverse();
    }
    out
}

/// Monomial symmetric polynomial m_lambda in n variables (lambda padded with zeros).
pub fn monomial_symmetric(n: usize, lambda: &[usize], field: ParamSet) -> MPoly {
    let mut e: Vec<u16> = lambda.iter().map(|&x| x as u16).collect();
    e.resize(n, 0);
    e.sort_unstable();
    MPoly::from_terms(
        n,
        field,
        distinct_rearrangements(&e).into_iter().map(|a| (Monomial::from_slice(&a), FieldElement::one(field))),
    )
}

/// True if `f` is invariant under every transposition of adjacent variables.
pub fn is_symmetric(f: &MPoly) -> bool {
    for i in 0..f.nvars().saturating_sub(1) {
        for (m, c) in f.terms() {
            let mut s = m.clone();
            s.0.swap(i, i + 1);
            if &f.coeff(&s) != c {
                return false;
            }
        }
    }
    true
}
