//! Symmetric Macdonald polynomials by a triangular solve of M_1 P = e P.
//!
//! With a_delta = prod_{i<j}(z_i - z_j),
//!   a_delta M_1 = sum_w sgn(w) z^{w delta} sum_i t^{(w delta)_i} T_{q,z_i},
//! so the coefficient of s_lambda in M_1 m_mu is the coefficient of
//! z^{lambda+delta} in that numerator, and the coefficient of s_lambda in m_mu
//! is sum_w sgn(w) [lambda + delta - w delta is a rearrangement of mu].
//! Both matrices are triangular for dominance, and the eigen-equation is
//! solved row by row in the Schur coordinates.

use std::collections::{BTreeMap, HashMap};

use crate::exactnum::FieldElement;
use crate::jackcore::{Collision, SymPoly};
use crate::mpoly::{permutations, vandermonde, MPoly, Monomial};
use crate::partlib::{dominated_partitions, eigen_macdonald_sym, Partition};

use super::qt::{QtAccumulator, QtMode};

struct Entries {
    /// (mu, lambda) -> coefficient of s_lambda in M_1 m_mu.
    m1: HashMap<(usize, usize), QtAccumulator>,
    /// (mu, lambda) -> coefficient of s_lambda in m_mu.
    kinv: HashMap<(usize, usize), i64>,
}

fn entries(parts: &[Partition]) -> Entries {
    let n = parts[0].n();
    let index: HashMap<&Partition, usize> = parts.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let perms = permutations(n);
    let mut m1: HashMap<(usize, usize), QtAccumulator> = HashMap::new();
    let mut kinv: HashMap<(usize, usize), i64> = HashMap::new();
    let mut beta = vec![0i64; n];
    for (li, lambda) in parts.iter().enumerate() {
        let ld: Vec<i64> = lambda.parts().iter().enumerate().map(|(i, &x)| (x + n - 1 - i) as i64).collect();
        'perm: for (perm, sign) in &perms {
            for i in 0..n {
                let wd = (n - 1 - perm[i]) as i64;
                beta[i] = ld[i] - wd;
                if beta[i] < 0 {
                    continue 'perm;
                }
            }
            let mut sorted: Vec<usize> = beta.iter().map(|&b| b as usize).collect();
            sorted.sort_unstable_by(|a, b| b.cmp(a));
            let Some(&mi) = index.get(&Partition::new(&sorted, n).unwrap()) else {
                continue;
            };
            *kinv.entry((mi, li)).or_insert(0) += *sign as i64;
            let acc = m1.entry((mi, li)).or_default();
            for i in 0..n {
                acc.add(beta[i] as u32, (n - 1 - perm[i]) as u32, *sign as i64);
            }
        }
    }
    Entries { m1, kinv }
}

pub(crate) fn solve(kappa: &Partition, mode: &QtMode) -> Result<SymPoly, Collision> {
    let field = mode.field();
    let (q, t) = (mode.q(), mode.t());
    let parts = dominated_partitions(kappa);
    let ent = entries(&parts);
    let e = eigen_macdonald_sym(kappa, &q, &t);
    // row[(mu, lambda)] = [s_lambda](M_1 - e) m_mu
    let row = |mi: usize, li: usize| -> FieldElement {
        let a = ent.m1.get(&(mi, li)).map(|acc| mode.collect(acc)).unwrap_or_else(|| FieldElement::zero(field));
        let k = ent.kinv.get(&(mi, li)).copied().unwrap_or(0);
        &a - &(&e * &FieldElement::from_int(k, field))
    };
    let mut coeffs: BTreeMap<usize, FieldElement> = BTreeMap::new();
    coeffs.insert(0, FieldElement::one(field));
    for li in 1..parts.len() {
        let mut rhs = FieldElement::zero(field);
        for (&mi, c) in &coeffs {
            if ent.kinv.contains_key(&(mi, li)) || ent.m1.contains_key(&(mi, li)) {
                rhs -= &(c * &row(mi, li));
            }
        }
        let pivot = row(li, li);
        if pivot.is_zero() {
            return Err(Collision { nu: parts[li].parts().to_vec(), eta: kappa.parts().to_vec() });
        }
        let c = rhs.checked_div(&pivot).unwrap();
        if !c.is_zero() {
            coeffs.insert(li, c);
        }
    }
    let mut s = SymPoly::zero(kappa.n(), field);
    for (i, c) in coeffs {
        s.coeffs.insert(parts[i].clone(), c);
    }
    Ok(s)
}

/// M_1 f computed from its definition, through one exact division by a_delta.
pub fn m1_apply(f: &MPoly, q: &FieldElement, t: &FieldElement) -> MPoly {
    let n = f.nvars();
    let field = f.field().union(q.vars()).union(t.vars());
    let f = f.with_field(field);
    let delta = vandermonde(n, field);
    let mut num = MPoly::zero(n, field);
    for i in 0..n {
        let td = crate::mpoly::apply_operator(&delta, &crate::mpoly::OperatorTag::QShift(i, t.clone()));
        let qf = crate::mpoly::apply_operator(&f, &crate::mpoly::OperatorTag::QShift(i, q.clone()));
        num = num.add(&td.mul(&qf));
    }
    num.exact_divide(&delta).expect("a_delta divides the numerator")
}

/// The (q,t) highest-weight operator
///   L+ f = sum_i prod_{j != i} (t z_i - z_j)/(z_i - z_j) (f - T_{q,z_i} f)/((1-q) z_i).
pub fn lqt_apply(f: &MPoly, q: &FieldElement, t: &FieldElement) -> MPoly {
    let n = f.nvars();
    let field = f.field().union(q.vars()).union(t.vars());
    let delta = vandermonde(n, field);
    let mut num = MPoly::zero(n, field);
    for i in 0..n {
        // (1 - q^b)/(1 - q) z^{beta - e_i} = (1 + q + ... + q^{b-1}) z^{beta - e_i}
        let mut g = MPoly::zero(n, field);
        for (m, c) in f.terms() {
            let b = m.0[i];
            if b == 0 {
                continue;
            }
            let mut qn = FieldElement::zero(field);
            for k in 0..b {
                qn += &q.pow(k as i64).unwrap();
            }
            let mut m2: Monomial = m.clone();
            m2.0[i] -= 1;
            g.add_term(m2, &(c * &qn));
        }
        let td = crate::mpoly::apply_operator(&delta, &crate::mpoly::OperatorTag::QShift(i, t.clone()));
        num = num.add(&td.mul(&g));
    }
    num.exact_divide(&delta).expect("a_delta divides the numerator")
}
