use crate::exactnum::{FieldElement, ParamSet};

use super::poly::{MPoly, Monomial};

fn linear(n: usize, field: ParamSet, a: (usize, FieldElement), b: (usize, FieldElement)) -> MPoly {
    let mut f = MPoly::zero(n, field);
    let mut ma = Monomial::zero(n);
    ma.0[a.0] = 1;
    f.add_term(ma, &a.1);
    let mut mb = Monomial::zero(n);
    mb.0[b.0] = 1;
    f.add_term(mb, &b.1);
    f
}

/// Delta(z) = prod_{j<k} (z_j - z_k).
pub fn vandermonde(n: usize, field: ParamSet) -> MPoly {
    t_vandermonde(n, &FieldElement::one(field))
}

/// Delta_t(z) = prod_{j<k} (t z_j - z_k).
pub fn t_vandermonde(n: usize, t: &FieldElement) -> MPoly {
    let field = t.vars();
    let mut f = MPoly::one(n, field);
    for j in 0..n {
        for k in j + 1..n {
            f = f.mul(&linear(n, field, (j, t.clone()), (k, -FieldElement::one(field))));
        }
    }
    f
}

/// D_1(z;q) = prod_{i != j} (q z_j - z_i).
pub fn d1(n: usize, q: &FieldElement) -> MPoly {
    let field = q.vars();
    let mut f = MPoly::one(n, field);
    for i in 0..n {
        for j in 0..n {
            if i != j {
                f = f.mul(&linear(n, field, (j, q.clone()), (i, -FieldElement::one(field))));
            }
        }
    }
    f
}

/// D_l(z;q) = prod_{i=0}^{l-1} D_1(z; q^{2i+1}).
pub fn d_l(n: usize, l: u32, q: &FieldElement) -> MPoly {
    let mut f = MPoly::one(n, q.vars());
    for i in 0..l {
        f = f.mul(&d1(n, &q.pow(2 * i as i64 + 1).unwrap()));
    }
    f
}

/// Perfect matchings of 0..n (n even) with their Pfaffian signs.
fn matchings(items: &[usize]) -> Vec<(Vec<(usize, usize)>, i32)> {
    if items.is_empty() {
        return vec![(Vec::new(), 1)];
    }
    let first = items[0];
    let mut out = Vec::new();
    for idx in 1..items.len() {
        let partner = items[idx];
        let rest: Vec<usize> = items[1..].iter().copied().filter(|&x| x != partner).collect();
        let sign = if idx % 2 == 1 { 1 } else { -1 };
        for (mut m, s) in matchings(&rest) {
            m.insert(0, (first, partner));
            out.push((m, s * sign));
        }
    }
    out
}

/// Pf[1/(z_k - z_l)] * prod_{i<j}(z_i - z_j) as a polynomial. Each matching
/// term is the Vandermonde product with the matched pairs removed.
pub fn pfaffian_product(n: usize, field: ParamSet) -> Result<MPoly, String> {
    if n % 2 == 1 {
        return Err(format!("pfaffian_product needs an even number of variables, got {n}"));
    }
    let one = FieldElement::one(field);
    let items: Vec<usize> = (0..n).collect();
    let mut total = MPoly::zero(n, field);
    for (m, sign) in matchings(&items) {
        let mut term = MPoly::constant(n, FieldElement::from_int(sign, field));
        for i in 0..n {
            for j in i + 1..n {
                if m.contains(&(i, j)) {
                    continue;
                }
                term = term.mul(&linear(n, field, (i, one.clone()), (j, -one.clone())));
            }
        }
        total = total.add(&term);
    }
    Ok(total)
}

/// Product of pairwise differences inside each of the given index groups.
pub fn group_vandermonde(n: usize, groups: &[Vec<usize>], power: u32, field: ParamSet) -> MPoly {
    let one = FieldElement::one(field);
    let mut f = MPoly::one(n, field);
    for g in groups {
        for a in 0..g.len() {
            for b in a + 1..g.len() {
                let lin = linear(n, field, (g[a], one.clone()), (g[b], -one.clone()));
                f = f.mul(&lin.pow(power));
            }
        }
    }
    f
}
