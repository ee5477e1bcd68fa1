use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::param::{Param, ParamSet, NPARAMS};

/// Exponents of a parameter monomial, indexed by [`Param::index`]. Entries of
/// parameters outside the declared set are always zero.
pub type Exps = [u32; NPARAMS];

const ZERO_EXPS: Exps = [0; NPARAMS];

/// Graded lexicographic comparison with the fixed order alpha > a > q > t > p.
pub fn grlex_cmp(a: &Exps, b: &Exps) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

fn divides(d: &Exps, e: &Exps) -> bool {
    d.iter().zip(e).all(|(x, y)| x <= y)
}

fn exps_sub(e: &Exps, d: &Exps) -> Exps {
    let mut r = ZERO_EXPS;
    for i in 0..NPARAMS {
        r[i] = e[i] - d[i];
    }
    r
}

fn exps_add(e: &Exps, d: &Exps) -> Exps {
    let mut r = ZERO_EXPS;
    for i in 0..NPARAMS {
        r[i] = e[i] + d[i];
    }
    r
}

/// Integer polynomial in a declared list of parameters. Terms are kept sorted
/// in strictly descending graded-lex order with no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ParamPoly {
    vars: ParamSet,
    terms: Vec<(Exps, BigInt)>,
}

impl ParamPoly {
    pub fn zero(vars: ParamSet) -> ParamPoly {
        ParamPoly { vars, terms: Vec::new() }
    }

    pub fn one(vars: ParamSet) -> ParamPoly {
        ParamPoly::constant(BigInt::one(), vars)
    }

    pub fn constant(c: BigInt, vars: ParamSet) -> ParamPoly {
        if c.is_zero() {
            ParamPoly::zero(vars)
        } else {
            ParamPoly { vars, terms: vec![(ZERO_EXPS, c)] }
        }
    }

    /// The parameter `p` itself; panics if `p` is not declared.
    pub fn param(p: Param, vars: ParamSet) -> ParamPoly {
        assert!(vars.contains(p), "parameter {p} not in {vars}");
        let mut e = ZERO_EXPS;
        e[p.index()] = 1;
        ParamPoly { vars, terms: vec![(e, BigInt::one())] }
    }

    pub fn monomial(exps: Exps, c: BigInt, vars: ParamSet) -> ParamPoly {
        debug_assert!(Param::ALL.iter().all(|p| vars.contains(*p) || exps[p.index()] == 0));
        if c.is_zero() {
            ParamPoly::zero(vars)
        } else {
            ParamPoly { vars, terms: vec![(exps, c)] }
        }
    }

    /// Builds a polynomial from arbitrary (possibly repeated, unsorted) terms.
    pub fn from_terms(vars: ParamSet, mut terms: Vec<(Exps, BigInt)>) -> ParamPoly {
        terms.sort_by(|a, b| grlex_cmp(&b.0, &a.0));
        let mut out: Vec<(Exps, BigInt)> = Vec::with_capacity(terms.len());
        for (e, c) in terms {
            match out.last_mut() {
                Some((le, lc)) if *le == e => *lc += c,
                _ => {
                    if let Some((_, lc)) = out.last() {
                        if lc.is_zero() {
                            out.pop();
                        }
                    }
                    out.push((e, c));
                }
            }
        }
        if let Some((_, lc)) = out.last() {
            if lc.is_zero() {
                out.pop();
            }
        }
        ParamPoly { vars, terms: out }
    }

    pub fn vars(&self) -> ParamSet {
        self.vars
    }

    pub fn terms(&self) -> &[(Exps, BigInt)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == ZERO_EXPS && self.terms[0].1.is_one()
    }

    /// The value if this is a constant polynomial (zero included).
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.as_slice() {
            [] => Some(BigInt::zero()),
            [(e, c)] if *e == ZERO_EXPS => Some(c.clone()),
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0 == ZERO_EXPS)
    }

    pub fn leading(&self) -> Option<&(Exps, BigInt)> {
        self.terms.first()
    }

    pub fn leading_coeff(&self) -> BigInt {
        self.terms.first().map(|t| t.1.clone()).unwrap_or_default()
    }

    /// Parameters that actually occur with a positive exponent.
    pub fn occurring(&self) -> ParamSet {
        let mut s = ParamSet::EMPTY;
        for (e, _) in &self.terms {
            for p in Param::ALL {
                if e[p.index()] > 0 {
                    s = s.with(p);
                }
            }
        }
        s
    }

    pub fn degree_in(&self, p: Param) -> u32 {
        self.terms.iter().map(|(e, _)| e[p.index()]).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.first().map(|(e, _)| e.iter().sum()).unwrap_or(0)
    }

    /// Re-declares the polynomial over a larger parameter list.
    pub fn with_vars(mut self, vars: ParamSet) -> ParamPoly {
        assert!(self.occurring().is_subset(vars), "cannot drop occurring parameters");
        self.vars = vars;
        self
    }

    pub fn neg(&self) -> ParamPoly {
        ParamPoly {
            vars: self.vars,
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }

    pub fn add(&self, other: &ParamPoly) -> ParamPoly {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &ParamPoly) -> ParamPoly {
        self.merge(other, true)
    }

    fn merge(&self, other: &ParamPoly, negate: bool) -> ParamPoly {
        let vars = self.vars.union(other.vars);
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        let b = &other.terms;
        while i < a.len() && j < b.len() {
            match grlex_cmp(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0, c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        for t in &b[j..] {
            let c = if negate { -&t.1 } else { t.1.clone() };
            out.push((t.0, c));
        }
        ParamPoly { vars, terms: out }
    }

    pub fn mul(&self, other: &ParamPoly) -> ParamPoly {
        let vars = self.vars.union(other.vars);
        if self.is_zero() || other.is_zero() {
            return ParamPoly::zero(vars);
        }
        if let Some(c) = other.as_constant() {
            return self.scale(&c).with_vars_unchecked(vars);
        }
        if let Some(c) = self.as_constant() {
            return other.scale(&c).with_vars_unchecked(vars);
        }
        let mut prods = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                prods.push((exps_add(ea, eb), ca * cb));
            }
        }
        ParamPoly::from_terms(vars, prods)
    }

    fn with_vars_unchecked(mut self, vars: ParamSet) -> ParamPoly {
        self.vars = vars;
        self
    }

    pub fn scale(&self, c: &BigInt) -> ParamPoly {
        if c.is_zero() {
            return ParamPoly::zero(self.vars);
        }
        ParamPoly {
            vars: self.vars,
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    /// Multiplies by a parameter monomial.
    pub fn shift(&self, exps: &Exps) -> ParamPoly {
        ParamPoly {
            vars: self.vars,
            terms: self.terms.iter().map(|(e, c)| (exps_add(e, exps), c.clone())).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> ParamPoly {
        let mut result = ParamPoly::one(self.vars);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = result.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Non-negative gcd of the integer coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divides every coefficient by `c`, which must divide all of them.
    pub fn div_scalar_exact(&self, c: &BigInt) -> ParamPoly {
        if c.is_one() {
            return self.clone();
        }
        ParamPoly {
            vars: self.vars,
            terms: self
                .terms
                .iter()
                .map(|(e, x)| {
                    debug_assert!((x % c).is_zero());
                    (*e, x / c)
                })
                .collect(),
        }
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self` in
    /// the integer polynomial ring.
    pub fn div_exact(&self, d: &ParamPoly) -> Option<ParamPoly> {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let vars = self.vars.union(d.vars);
        if self.is_zero() {
            return Some(ParamPoly::zero(vars));
        }
        if let Some(c) = d.as_constant() {
            if self.terms.iter().all(|(_, x)| (x % &c).is_zero()) {
                return Some(ParamPoly {
                    vars,
                    terms: self.terms.iter().map(|(e, x)| (*e, x / &c)).collect(),
                });
            }
            return None;
        }
        let occ = self.occurring().union(d.occurring());
        if occ.len() == 1 {
            let p = occ.iter().next().unwrap();
            let a = super::gcd::to_dense(self, p);
            let b = super::gcd::to_dense(d, p);
            return super::gcd::dense_div_exact(&a, &b)
                .map(|q| super::gcd::from_dense(&q, p, vars));
        }
        let (ld_e, ld_c) = d.terms[0].clone();
        let mut rem = self.clone();
        let mut quot: Vec<(Exps, BigInt)> = Vec::new();
        while let Some((re, rc)) = rem.terms.first() {
            if !divides(&ld_e, re) {
                return None;
            }
            let (qc, r) = rc.div_rem(&ld_c);
            if !r.is_zero() {
                return None;
            }
            let qe = exps_sub(re, &ld_e);
            let step = ParamPoly { vars, terms: d.terms.iter().map(|(e, c)| (exps_add(e, &qe), c * &qc)).collect() };
            quot.push((qe, qc));
            rem = rem.sub(&step);
        }
        Some(ParamPoly { vars, terms: quot })
    }

    /// Splits into coefficients of powers of `p`: element `k` holds the
    /// coefficient of `p^k` (with `p` removed from its exponents).
    pub fn coeffs_in(&self, p: Param) -> Vec<ParamPoly> {
        let deg = self.degree_in(p) as usize;
        let mut buckets: Vec<Vec<(Exps, BigInt)>> = vec![Vec::new(); deg + 1];
        for (e, c) in &self.terms {
            let k = e[p.index()] as usize;
            let mut e2 = *e;
            e2[p.index()] = 0;
            buckets[k].push((e2, c.clone()));
        }
        // Removing one variable from a grlex-sorted list keeps each bucket sorted
        // only up to degree ties, so re-sort.
        buckets.into_iter().map(|b| ParamPoly::from_terms(self.vars, b)).collect()
    }

    /// Inverse of [`ParamPoly::coeffs_in`].
    pub fn from_coeffs_in(coeffs: &[ParamPoly], p: Param, vars: ParamSet) -> ParamPoly {
        let mut terms = Vec::new();
        for (k, c) in coeffs.iter().enumerate() {
            for (e, x) in &c.terms {
                let mut e2 = *e;
                e2[p.index()] += k as u32;
                terms.push((e2, x.clone()));
            }
        }
        ParamPoly::from_terms(vars, terms)
    }

    /// Sign of the leading coefficient (zero polynomial gives 0).
    pub fn leading_sign(&self) -> i32 {
        match self.terms.first() {
            None => 0,
            Some((_, c)) if c.is_negative() => -1,
            Some(_) => 1,
        }
    }
}

impl fmt::Display for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let mut factors: Vec<String> = Vec::new();
            for p in Param::ALL {
                match e[p.index()] {
                    0 => {}
                    1 => factors.push(p.name().to_string()),
                    n => factors.push(format!("{}^{}", p.name(), n)),
                }
            }
            if factors.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                f.write_str(&factors.join("*"))?;
            } else {
                write!(f, "{}*{}", abs, factors.join("*"))?;
            }
        }
        Ok(())
    }
}
