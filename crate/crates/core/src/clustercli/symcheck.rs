//! The clustering check carried out in the monomial symmetric basis of the
//! kept variables, for cases whose full expansion does not fit in memory.
//!
//! A `ZSym` is sum c z^e m_lambda(z_1, .., z_kept).

use std::collections::{BTreeMap, HashMap};

use crate::exactnum::{text, FieldElement, ParamSet};
use crate::jackcore::{orbit_size, SymPoly};
use crate::mpoly::distinct_rearrangements;
use crate::partlib::Partition;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(super) struct ZSym {
    pub kept: usize,
    pub field: ParamSet,
    pub terms: BTreeMap<(usize, Vec<usize>), FieldElement>,
}

impl ZSym {
    fn new(kept: usize, field: ParamSet) -> ZSym {
        ZSym { kept, field, terms: BTreeMap::new() }
    }

    fn add(&mut self, e: usize, mut lambda: Vec<usize>, c: FieldElement) {
        if c.is_zero() {
            return;
        }
        lambda.sort_unstable_by(|a, b| b.cmp(a));
        let key = (e, lambda);
        match self.terms.get_mut(&key) {
            Some(x) => {
                *x += &c;
                if x.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn sub(&self, other: &ZSym) -> ZSym {
        let mut out = self.clone();
        out.field = self.field.union(other.field);
        for ((e, l), c) in &other.terms {
            out.add(*e, l.clone(), -c.clone());
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("zsym kept={}\n", self.kept);
        for ((e, l), c) in &self.terms {
            s.push_str(&format!("{e} {l:?} : {}\n", text::field_to_text(c)));
        }
        s
    }
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// Distinct values with multiplicities, in decreasing value order.
fn multiplicities(parts: &[usize]) -> Vec<(usize, usize)> {
    let mut out: Vec<(usize, usize)> = Vec::new();
    for &p in parts {
        match out.iter_mut().find(|(v, _)| *v == p) {
            Some((_, c)) => *c += 1,
            None => out.push((p, 1)),
        }
    }
    out
}

/// f(z_1, .., z_kept, z, .., z) with the last n0 variables set to z.
///
/// m_mu restricts to sum over sub-multisets nu of mu of size n0 of
/// (arrangements of nu) z^{|nu|} m_{mu \ nu}.
pub(super) fn coalesce_last(f: &SymPoly, n0: usize) -> ZSym {
    let kept = f.n - n0;
    let mut out = ZSym::new(kept, f.field);
    for (mu, c) in &f.coeffs {
        let mult = multiplicities(mu.parts());
        let mut take = vec![0usize; mult.len()];
        choose(&mult, 0, n0, &mut take, &mut |take| {
            let mut rest = Vec::with_capacity(kept);
            let mut e = 0;
            let mut denom = 1u64;
            for (&(v, m), &t) in mult.iter().zip(take) {
                rest.extend(std::iter::repeat_n(v, m - t));
                e += v * t;
                denom *= factorial(t);
            }
            let w = FieldElement::from_int((factorial(n0) / denom) as i64, f.field);
            out.add(e, rest, c * &w);
        });
    }
    out
}

fn choose(mult: &[(usize, usize)], i: usize, left: usize, take: &mut Vec<usize>, emit: &mut impl FnMut(&[usize])) {
    if i == mult.len() {
        if left == 0 {
            emit(take);
        }
        return;
    }
    for t in 0..=left.min(mult[i].1) {
        take[i] = t;
        choose(mult, i + 1, left - t, take, emit);
    }
    take[i] = 0;
}

fn binomial(n: usize, k: usize) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

/// prod_{j < kept} (z_j - z)^e: the coefficient of z^{kept e - |lambda|}
/// m_lambda is prod_j C(e, lambda_j) (-1)^{e - lambda_j}.
pub(super) fn cluster_factor(kept: usize, e: usize, field: ParamSet) -> ZSym {
    let mut out = ZSym::new(kept, field);
    let mut lambda = Vec::with_capacity(kept);
    partitions_bounded(kept, e, &mut lambda, &mut |l| {
        let mut c = 1i64;
        let mut zexp = 0;
        for &a in l {
            let sign = if (e - a) % 2 == 0 { 1 } else { -1 };
            c *= sign * binomial(e, a);
            zexp += e - a;
        }
        out.add(zexp, l.to_vec(), FieldElement::from_int(c, field));
    });
    out
}

/// Weakly decreasing sequences of the given length with entries <= max.
fn partitions_bounded(len: usize, max: usize, cur: &mut Vec<usize>, emit: &mut impl FnMut(&[usize])) {
    if cur.len() == len {
        emit(cur);
        return;
    }
    let top = cur.last().copied().unwrap_or(max);
    for a in (0..=top).rev() {
        cur.push(a);
        partitions_bounded(len, max, cur, emit);
        cur.pop();
    }
}

/// a times g, where g is symmetric in the kept variables and free of z.
///
/// The coefficient of m_rho in m_lambda m_nu is
/// |O(nu)| / |O(rho)| * #{b in O(lambda) : sort(nu + b) = rho}; the orbit of
/// lambda is the one enumerated since its entries are small here.
pub(super) fn mul_sym(a: &ZSym, g: &SymPoly) -> ZSym {
    assert_eq!(a.kept, g.n, "variable count mismatch");
    let field = a.field.union(g.field);
    let mut acc: HashMap<(usize, Vec<usize>), FieldElement> = HashMap::new();
    let mut orbit_cache: HashMap<Vec<usize>, u64> = HashMap::new();
    let mut orbit = |p: &[usize]| -> u64 {
        *orbit_cache.entry(p.to_vec()).or_insert_with(|| orbit_size(&Partition::new(p, p.len()).unwrap()))
    };
    for ((e, lambda), c) in &a.terms {
        let mut asc: Vec<u16> = lambda.iter().map(|&x| x as u16).collect();
        asc.sort_unstable();
        let perms = distinct_rearrangements(&asc);
        for (nu, d) in &g.coeffs {
            let cd = c * d;
            let o_nu = orbit(nu.parts());
            let mut counts: HashMap<Vec<usize>, u64> = HashMap::new();
            for b in &perms {
                let mut rho: Vec<usize> = nu.parts().iter().zip(b).map(|(&x, &y)| x + y as usize).collect();
                rho.sort_unstable_by(|x, y| y.cmp(x));
                *counts.entry(rho).or_insert(0) += 1;
            }
            for (rho, cnt) in counts {
                let o_rho = orbit(&rho);
                let w = FieldElement::ratio((o_nu * cnt) as i64, o_rho as i64, field);
                let key = (*e, rho);
                let term = &cd * &w;
                match acc.get_mut(&key) {
                    Some(x) => *x += &term,
                    None => {
                        acc.insert(key, term);
                    }
                }
            }
        }
    }
    let mut out = ZSym::new(a.kept, field);
    for ((e, rho), c) in acc {
        out.add(e, rho, c);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{Param, ParamSet};
    use crate::jackcore::{jack_symmetric_sym, AlphaMode, SymRoute};
    use crate::mpoly::{substitute, MPoly, Monomial, SubstPlan};
    use crate::partlib::partitions_of;

    /// Expands a ZSym into kept + 1 variables, z last.
    fn expand(z: &ZSym) -> MPoly {
        let n = z.kept + 1;
        let mut out = MPoly::zero(n, z.field);
        for ((e, l), c) in &z.terms {
            let m = SymPoly { n: z.kept, field: z.field, coeffs: [(Partition::new(l, z.kept).unwrap(), c.clone())].into() }.to_mpoly();
            for (mono, c) in m.terms() {
                let mut ex: Vec<usize> = mono.0.iter().map(|&x| x as usize).collect();
                ex.push(*e);
                out.add_term(Monomial::from_usizes(&ex), c);
            }
        }
        out
    }

    fn field() -> ParamSet {
        ParamSet::single(Param::Alpha)
    }

    #[test]
    fn coalescing_matches_substitution() {
        for n in 2..=4 {
            for n0 in 1..n {
                for m in 0..=4 {
                    for k in partitions_of(m, n) {
                        let s = jack_symmetric_sym(&k, &AlphaMode::Generic, SymRoute::Sutherland).unwrap();
                        let f = s.to_mpoly();
                        let coalesced: Vec<usize> = (n - n0..n).collect();
                        let direct = substitute(&f, &SubstPlan::coalesce(n, &coalesced, f.field()));
                        assert_eq!(expand(&coalesce_last(&s, n0)), direct, "{:?} n0={n0}", k);
                    }
                }
            }
        }
    }

    #[test]
    fn factor_and_product_match_expansion() {
        for kept in 1..=3 {
            for e in 0..=3 {
                let fac = cluster_factor(kept, e, field());
                let n = kept + 1;
                let one = FieldElement::one(field());
                let mut direct = MPoly::one(n, field());
                for j in 0..kept {
                    let lin = MPoly::var(n, j, field()).sub(&MPoly::var(n, kept, field()).scale(&one));
                    direct = direct.mul(&lin.pow(e as u32));
                }
                assert_eq!(expand(&fac), direct);
                for m in 0..=3 {
                    for k in partitions_of(m, kept) {
                        let g = jack_symmetric_sym(&k, &AlphaMode::Generic, SymRoute::Sutherland).unwrap();
                        let prod = mul_sym(&fac, &g);
                        let gx = g.to_mpoly();
                        let mut emb = MPoly::zero(n, field());
                        for (mono, c) in gx.terms() {
                            let mut ex: Vec<usize> = mono.0.iter().map(|&x| x as usize).collect();
                            ex.push(0);
                            emb.add_term(Monomial::from_usizes(&ex), c);
                        }
                        assert_eq!(expand(&prod), direct.mul(&emb), "kept={kept} e={e} {:?}", k);
                    }
                }
            }
        }
    }
}
