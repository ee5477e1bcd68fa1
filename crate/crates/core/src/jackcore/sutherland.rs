//! Symmetric Jack polynomials by a triangular solve in the monomial
//! symmetric basis against
//!   alpha * H,  H = sum_j (z_j d_j)^2 + (1/alpha) sum_{j<k} (z_j+z_k)/(z_j-z_k) (z_j d_j - z_k d_k).
//! The eigenvalue of P_kappa is the (H1a)-type expression evaluated at 1/alpha;
//! after scaling by alpha every off-diagonal entry is an integer.

use std::collections::BTreeMap;

use crate::exactnum::FieldElement;
use crate::mpoly::{apply_operator, MPoly, OperatorTag};
use crate::partlib::{dominated_partitions, Partition};

use super::cherednik::Collision;
use super::sym::SymPoly;

/// Diagonal entry alpha sum nu_i^2 + sum_{j<k} (nu_j - nu_k).
fn diag(nu: &Partition, alpha: &FieldElement) -> FieldElement {
    let p = nu.parts();
    let sq: i64 = p.iter().map(|&x| (x * x) as i64).sum();
    let mut lin: i64 = 0;
    for j in 0..p.len() {
        for k in j + 1..p.len() {
            lin += p[j] as i64 - p[k] as i64;
        }
    }
    &(alpha * &FieldElement::from_int(sq, alpha.vars())) + &FieldElement::from_int(lin, alpha.vars())
}

/// Off-diagonal entries: for each mu above nu, the coefficient of m_nu in
/// alpha H m_mu.
fn column_sources(nu: &Partition) -> BTreeMap<Partition, i64> {
    let p = nu.parts();
    let n = p.len();
    let mut out: BTreeMap<Partition, i64> = BTreeMap::new();
    for j in 0..n {
        for k in j + 1..n {
            let s = p[j] + p[k];
            let hi = p[j].max(p[k]);
            for a in hi + 1..=s {
                let b = s - a;
                let mut v = p.to_vec();
                v[j] = a;
                v[k] = b;
                v.sort_unstable_by(|x, y| y.cmp(x));
                let mu = Partition::new(&v, n).unwrap();
                *out.entry(mu).or_insert(0) += 2 * (a as i64 - b as i64);
            }
        }
    }
    out
}

pub(crate) fn solve(kappa: &Partition, alpha: &FieldElement) -> Result<SymPoly, Collision> {
    let vars = alpha.vars();
    let target = diag(kappa, alpha);
    // Decreasing lexicographic order refines dominance.
    let parts = dominated_partitions(kappa);
    let mut coeffs: BTreeMap<Partition, FieldElement> = BTreeMap::new();
    coeffs.insert(kappa.clone(), FieldElement::one(vars));
    for nu in parts.iter().skip(1) {
        let mut rhs = FieldElement::zero(vars);
        for (mu, k) in column_sources(nu) {
            if let Some(c) = coeffs.get(&mu) {
                rhs += &(c * &FieldElement::from_int(k, vars));
            }
        }
        let pivot = &target - &diag(nu, alpha);
        if pivot.is_zero() {
            return Err(Collision { nu: nu.parts().to_vec(), eta: kappa.parts().to_vec() });
        }
        let c = rhs.checked_div(&pivot).unwrap();
        if !c.is_zero() {
            coeffs.insert(nu.clone(), c);
        }
    }
    let mut s = SymPoly::zero(kappa.n(), vars);
    s.coeffs = coeffs;
    Ok(s)
}

/// alpha H applied to a symmetric polynomial, through exact division; used to
/// check eigen-equations independently of the m-basis formulas.
pub fn apply_scaled_sutherland(f: &MPoly, alpha: &FieldElement) -> MPoly {
    let n = f.nvars();
    let field = f.field().union(alpha.vars());
    let mut out = MPoly::zero(n, field);
    for j in 0..n {
        let e = apply_operator(f, &OperatorTag::Euler(j));
        out = out.add(&apply_operator(&e, &OperatorTag::Euler(j)).scale(alpha));
    }
    for j in 0..n {
        for k in j + 1..n {
            let zj = MPoly::var(n, j, field);
            let zk = MPoly::var(n, k, field);
            let diff = apply_operator(f, &OperatorTag::Euler(j)).sub(&apply_operator(f, &OperatorTag::Euler(k)));
            let num = zj.add(&zk).mul(&diff);
            let q = num.exact_divide(&zj.sub(&zk)).expect("symmetric input gives an exact quotient");
            out = out.add(&q);
        }
    }
    out
}

/// Eigenvalue of alpha H on P_kappa.
pub fn scaled_eigenvalue(kappa: &Partition, alpha: &FieldElement) -> FieldElement {
    diag(kappa, alpha)
}
