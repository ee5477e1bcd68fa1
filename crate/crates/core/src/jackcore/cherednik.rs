//! Nonsymmetric Jack polynomials as joint eigenfunctions of the Cherednik
//! operators xi_i = alpha z_i d_i + 1 - N + sum_{p>i} s_ip.
//!
//! On a monomial z^e, xi_i acts as ebar_i(e) z^e plus integer multiples of
//! monomials that are strictly lower in the order "sorted exponents (lex),
//! then exponents (lex)". The solve walks monomials from the top down and
//! accumulates, for each i, the contributions already known.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};

use smallvec::SmallVec;

use crate::exactnum::FieldElement;
use crate::mpoly::{MPoly, Monomial};
use crate::partlib::{eigen_jack_nonsym, Composition};

pub(crate) type Exp = SmallVec<[u16; 8]>;

/// Ordering key: larger keys are processed first.
#[derive(Clone, PartialEq, Eq, Debug)]
pub(crate) struct Key(pub Exp);

fn sorted_desc(e: &Exp) -> Exp {
    let mut s = e.clone();
    s.sort_unstable_by(|a, b| b.cmp(a));
    s
}

impl Ord for Key {
    fn cmp(&self, other: &Key) -> Ordering {
        sorted_desc(&self.0).cmp(&sorted_desc(&other.0)).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Key {
    fn partial_cmp(&self, other: &Key) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Off-diagonal part of xi_i on z^e (0-based i) with integer coefficients.
pub(crate) fn xi_offdiag(e: &Exp, i: usize) -> Vec<(Exp, i64)> {
    let n = e.len();
    let mut acc: HashMap<Exp, i64> = HashMap::new();
    let mut push = |t: Exp, c: i64| {
        *acc.entry(t).or_insert(0) += c;
    };
    let a = e[i];
    for k in 0..n {
        if k == i {
            continue;
        }
        let b = e[k];
        // z_i (1 - s_ik)/(z_i - z_k) on z_i^a z_k^b.
        if a > b {
            for j in 1..(a - b) {
                let mut t = e.clone();
                t[i] = a - j;
                t[k] = b + j;
                push(t, 1);
            }
        } else if a < b {
            for j in 0..(b - a) {
                let mut t = e.clone();
                t[i] = a + 1 + j;
                t[k] = b - 1 - j;
                push(t, -1);
            }
        }
    }
    for p in i + 1..n {
        if e[p] != e[i] {
            let mut t = e.clone();
            t.swap(i, p);
            push(t, 1);
        }
    }
    acc.into_iter().filter(|(_, c)| *c != 0).collect()
}

pub(crate) fn ebar(e: &Exp, alpha: &FieldElement) -> Vec<FieldElement> {
    let comp = Composition::new(&e.iter().map(|&x| x as usize).collect::<Vec<_>>());
    (0..e.len()).map(|i| eigen_jack_nonsym(&comp, i, alpha)).collect()
}

/// Failure of the triangular solve at a specialized parameter.
#[derive(Debug, Clone)]
pub struct Collision {
    pub nu: Vec<usize>,
    pub eta: Vec<usize>,
}

/// Triangular solve for E_eta. With `check_consistency` every equation is
/// verified, not only the one used as pivot (needed at specialized alpha).
pub(crate) fn solve(eta: &[usize], alpha: &FieldElement, check_consistency: bool) -> Result<Vec<(Exp, FieldElement)>, Collision> {
    let n = eta.len();
    let top: Exp = eta.iter().map(|&x| x as u16).collect();
    let target = ebar(&top, alpha);
    let mut residual: Vec<HashMap<Exp, FieldElement>> = vec![HashMap::new(); n];
    let mut pending: BTreeSet<Key> = BTreeSet::new();
    let mut out: Vec<(Exp, FieldElement)> = Vec::new();
    let one = FieldElement::one(alpha.vars());

    let propagate = |e: &Exp, c: &FieldElement, residual: &mut Vec<HashMap<Exp, FieldElement>>, pending: &mut BTreeSet<Key>| {
        for (i, res) in residual.iter_mut().enumerate() {
            for (t, k) in xi_offdiag(e, i) {
                let add = c * &FieldElement::from_int(k, c.vars());
                let slot = res.entry(t.clone()).or_insert_with(|| FieldElement::zero(c.vars()));
                *slot += &add;
                pending.insert(Key(t));
            }
        }
    };

    propagate(&top, &one, &mut residual, &mut pending);
    out.push((top.clone(), one.clone()));

    while let Some(Key(nu)) = pending.pop_last() {
        let ev = ebar(&nu, alpha);
        let pivots: Vec<FieldElement> = (0..n).map(|i| &target[i] - &ev[i]).collect();
        let res: Vec<FieldElement> =
            (0..n).map(|i| residual[i].remove(&nu).unwrap_or_else(|| FieldElement::zero(alpha.vars()))).collect();
        let pick = (0..n).find(|&i| !pivots[i].is_zero());
        let c = match pick {
            Some(i) => res[i].checked_div(&pivots[i]).unwrap(),
            None => {
                return Err(Collision { nu: nu.iter().map(|&x| x as usize).collect(), eta: eta.to_vec() });
            }
        };
        if check_consistency {
            for i in 0..n {
                if &c * &pivots[i] != res[i] {
                    return Err(Collision { nu: nu.iter().map(|&x| x as usize).collect(), eta: eta.to_vec() });
                }
            }
        }
        if c.is_zero() {
            continue;
        }
        propagate(&nu, &c, &mut residual, &mut pending);
        out.push((nu, c));
    }
    Ok(out)
}

/// xi_i applied to a polynomial (0-based i).
pub fn apply_xi(f: &MPoly, i: usize, alpha: &FieldElement) -> MPoly {
    let mut out = MPoly::zero(f.nvars(), f.field().union(alpha.vars()));
    for (m, c) in f.terms() {
        let e: Exp = m.0.clone();
        let d = &ebar(&e, alpha)[i];
        out.add_term(m.clone(), &(c * d));
        for (t, k) in xi_offdiag(&e, i) {
            out.add_term(Monomial(t), &(c * &FieldElement::from_int(k, c.vars())));
        }
    }
    out
}

/// xi_i from its definition through Dunkl operators, used to validate the
/// monomial formula in tests.
pub fn apply_xi_reference(f: &MPoly, i: usize, alpha: &FieldElement) -> MPoly {
    use crate::mpoly::{apply_operator, divided_difference, OperatorTag};
    let n = f.nvars();
    let field = f.field().union(alpha.vars());
    let zi = MPoly::var(n, i, field);
    let mut dunkl = apply_operator(f, &OperatorTag::Partial(i));
    let inv_alpha = alpha.inv().expect("alpha != 0");
    for k in 0..n {
        if k != i {
            dunkl = dunkl.add(&divided_difference(f, i, k).scale(&inv_alpha));
        }
    }
    let mut out = zi.mul(&dunkl).scale(alpha);
    out = out.add(&f.scale(&FieldElement::from_int(1 - n as i64, field)));
    for p in i + 1..n {
        out = out.add(&apply_operator(f, &OperatorTag::Swap(i, p)));
    }
    out
}
