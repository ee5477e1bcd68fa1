//! Nonsymmetric Macdonald polynomials as joint eigenfunctions of the Y_i.
//!
//! Y_i z^nu is computed per monomial from the Hecke operators. It equals its
//! diagonal coefficient times z^nu plus monomials strictly below nu in the
//! order used for the Jack case; the solve relies on this and asserts it.

use std::collections::{BTreeSet, HashMap};

use crate::exactnum::FieldElement;
use crate::jackcore::Collision;
use crate::mpoly::{MPoly, Monomial};

use super::hecke::y_apply;
use super::qt::QtMode;

type Exp = smallvec::SmallVec<[u16; 8]>;

#[derive(Clone, PartialEq, Eq, Debug)]
struct Key(Exp);

fn sorted_desc(e: &Exp) -> Exp {
    let mut s = e.clone();
    s.sort_unstable_by(|a, b| b.cmp(a));
    s
}

impl Ord for Key {
    fn cmp(&self, other: &Key) -> std::cmp::Ordering {
        sorted_desc(&self.0).cmp(&sorted_desc(&other.0)).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Key {
    fn partial_cmp(&self, other: &Key) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Y_i z^e split into (diagonal coefficient, off-diagonal part) for each i.
fn y_on_monomial(e: &Exp, mode: &QtMode) -> Vec<(FieldElement, Vec<(Exp, FieldElement)>)> {
    let n = e.len();
    let field = mode.field();
    let (q, t) = (mode.q(), mode.t());
    let mono = MPoly::monomial(n, field, Monomial(e.clone()), FieldElement::one(field));
    let top = Key(e.clone());
    (0..n)
        .map(|i| {
            let img = y_apply(&mono, i, &q, &t);
            let mut diag = FieldElement::zero(field);
            let mut off = Vec::new();
            for (m, c) in img.terms() {
                if m.0 == *e {
                    diag = c.clone();
                } else {
                    assert!(Key(m.0.clone()) < top, "Y_{} z^{:?} has a term above the diagonal: {:?}", i, e, m.0);
                    off.push((m.0.clone(), c.clone()));
                }
            }
            (diag, off)
        })
        .collect()
}

pub(crate) fn solve(eta: &[usize], mode: &QtMode) -> Result<MPoly, Collision> {
    let n = eta.len();
    let field = mode.field();
    let top: Exp = eta.iter().map(|&x| x as u16).collect();
    let mut memo: HashMap<Exp, Vec<(FieldElement, Vec<(Exp, FieldElement)>)>> = HashMap::new();
    let mut action = |e: &Exp| -> Vec<(FieldElement, Vec<(Exp, FieldElement)>)> {
        memo.entry(e.clone()).or_insert_with(|| y_on_monomial(e, mode)).clone()
    };
    let top_action = action(&top);
    let target: Vec<FieldElement> = top_action.iter().map(|(d, _)| d.clone()).collect();
    let mut residual: Vec<HashMap<Exp, FieldElement>> = vec![HashMap::new(); n];
    let mut pending: BTreeSet<Key> = BTreeSet::new();
    let mut out = MPoly::zero(n, field);
    let one = FieldElement::one(field);

    let propagate = |act: &[(FieldElement, Vec<(Exp, FieldElement)>)], c: &FieldElement, residual: &mut Vec<HashMap<Exp, FieldElement>>, pending: &mut BTreeSet<Key>| {
        for (i, (_, off)) in act.iter().enumerate() {
            for (m, k) in off {
                let slot = residual[i].entry(m.clone()).or_insert_with(|| FieldElement::zero(field));
                *slot += &(c * k);
                pending.insert(Key(m.clone()));
            }
        }
    };
    propagate(&top_action, &one, &mut residual, &mut pending);
    out.add_term(Monomial(top.clone()), &one);

    while let Some(Key(nu)) = pending.pop_last() {
        let act = action(&nu);
        let pivots: Vec<FieldElement> = (0..n).map(|i| &target[i] - &act[i].0).collect();
        let res: Vec<FieldElement> = (0..n).map(|i| residual[i].remove(&nu).unwrap_or_else(|| FieldElement::zero(field))).collect();
        let Some(pick) = (0..n).find(|&i| !pivots[i].is_zero()) else {
            return Err(Collision { nu: nu.iter().map(|&x| x as usize).collect(), eta: eta.to_vec() });
        };
        let c = res[pick].checked_div(&pivots[pick]).unwrap();
        for i in 0..n {
            if &c * &pivots[i] != res[i] {
                return Err(Collision { nu: nu.iter().map(|&x| x as usize).collect(), eta: eta.to_vec() });
            }
        }
        if c.is_zero() {
            continue;
        }
        propagate(&act, &c, &mut residual, &mut pending);
        out.add_term(Monomial(nu), &c);
    }
    Ok(out)
}
