use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use smallvec::SmallVec;
use thiserror::Error;

use crate::exactnum::{text, ExactError, FieldElement, Param, ParamSet};

/// Exponent vector of a monomial in z_1..z_N. Ordered by total degree, then
/// lexicographically (z_1 largest).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub SmallVec<[u16; 8]>);

impl Monomial {
    pub fn zero(n: usize) -> Monomial {
        Monomial(SmallVec::from_elem(0, n))
    }

    pub fn from_slice(e: &[u16]) -> Monomial {
        Monomial(SmallVec::from_slice(e))
    }

    pub fn from_usizes(e: &[usize]) -> Monomial {
        Monomial(e.iter().map(|&x| x as u16).collect())
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }

    pub fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a - b).collect())
    }

    /// Exponents sorted into a weakly decreasing partition.
    pub fn sorted_desc(&self) -> Monomial {
        let mut v = self.0.clone();
        v.sort_unstable_by(|a, b| b.cmp(a));
        Monomial(v)
    }

    pub fn as_slice(&self) -> &[u16] {
        &self.0
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Monomial) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Monomial) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Clone, Error)]
pub enum PolyError {
    #[error("variable count mismatch: {0} vs {1}")]
    NvarsMismatch(usize, usize),
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("not divisible; remainder has {} terms", .remainder.len())]
    NonDivisible { remainder: Box<MPoly> },
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error("parse error: {0}")]
    Parse(String),
}

impl PolyError {
    pub fn remainder(&self) -> Option<&MPoly> {
        match self {
            PolyError::NonDivisible { remainder } => Some(remainder),
            _ => None,
        }
    }
}

/// Sparse polynomial in z_1..z_N with coefficients in a parameter field.
/// Variables are indexed from 0 in the API.
#[derive(Clone, Debug)]
pub struct MPoly {
    nvars: usize,
    field: ParamSet,
    terms: BTreeMap<Monomial, FieldElement>,
}

impl MPoly {
    pub fn zero(nvars: usize, field: ParamSet) -> MPoly {
        MPoly { nvars, field, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize, field: ParamSet) -> MPoly {
        MPoly::constant(nvars, FieldElement::one(field))
    }

    pub fn constant(nvars: usize, c: FieldElement) -> MPoly {
        let field = c.vars();
        MPoly::monomial(nvars, field, Monomial::zero(nvars), c)
    }

    pub fn monomial(nvars: usize, field: ParamSet, m: Monomial, c: FieldElement) -> MPoly {
        assert_eq!(m.len(), nvars, "monomial length");
        let mut terms = BTreeMap::new();
        let field = field.union(c.vars());
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MPoly { nvars, field, terms }
    }

    /// The variable z_{i+1}.
    pub fn var(nvars: usize, i: usize, field: ParamSet) -> MPoly {
        let mut m = Monomial::zero(nvars);
        m.0[i] = 1;
        MPoly::monomial(nvars, field, m, FieldElement::one(field))
    }

    pub fn from_terms(nvars: usize, field: ParamSet, terms: impl IntoIterator<Item = (Monomial, FieldElement)>) -> MPoly {
        let mut p = MPoly::zero(nvars, field);
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn field(&self) -> ParamSet {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending term order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &FieldElement)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> FieldElement {
        self.terms.get(m).cloned().unwrap_or_else(|| FieldElement::zero(self.field))
    }

    pub fn coeff_of(&self, e: &[usize]) -> FieldElement {
        self.coeff(&Monomial::from_usizes(e))
    }

    pub fn leading(&self) -> Option<(&Monomial, &FieldElement)> {
        self.terms.iter().next_back()
    }

    pub fn degree(&self) -> Option<u32> {
        self.leading().map(|(m, _)| m.degree())
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(|m| m.degree());
        match it.next() {
            None => true,
            Some(d) => it.all(|x| x == d),
        }
    }

    /// Adds `c * z^m` in place.
    pub fn add_term(&mut self, m: Monomial, c: &FieldElement) {
        debug_assert_eq!(m.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        self.field = self.field.union(c.vars());
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn check_nvars(&self, other: &MPoly) -> Result<(), PolyError> {
        if self.nvars != other.nvars {
            Err(PolyError::NvarsMismatch(self.nvars, other.nvars))
        } else {
            Ok(())
        }
    }

    pub fn try_add(&self, other: &MPoly) -> Result<MPoly, PolyError> {
        self.check_nvars(other)?;
        let (mut big, small) = if self.len() >= other.len() { (self.clone(), other) } else { (other.clone(), self) };
        for (m, c) in &small.terms {
            big.add_term(m.clone(), c);
        }
        big.field = self.field.union(other.field);
        Ok(big)
    }

    pub fn try_sub(&self, other: &MPoly) -> Result<MPoly, PolyError> {
        self.check_nvars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), &-c);
        }
        out.field = self.field.union(other.field);
        Ok(out)
    }

    pub fn try_mul(&self, other: &MPoly) -> Result<MPoly, PolyError> {
        self.check_nvars(other)?;
        let mut out = MPoly::zero(self.nvars, self.field.union(other.field));
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), &(ca * cb));
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        self.try_add(other).expect("nvars")
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        self.try_sub(other).expect("nvars")
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        self.try_mul(other).expect("nvars")
    }

    pub fn neg(&self) -> MPoly {
        MPoly { nvars: self.nvars, field: self.field, terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn scale(&self, c: &FieldElement) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(self.nvars, self.field.union(c.vars()));
        }
        if c.is_one() {
            return self.clone();
        }
        MPoly {
            nvars: self.nvars,
            field: self.field.union(c.vars()),
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    /// Multiplies by the monomial z^m.
    pub fn shift(&self, m: &Monomial) -> MPoly {
        MPoly { nvars: self.nvars, field: self.field, terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect() }
    }

    pub fn pow(&self, n: u32) -> MPoly {
        let mut acc = MPoly::one(self.nvars, self.field);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Applies a coefficientwise map, dropping terms that become zero.
    pub fn try_map_coeffs<E>(&self, field: ParamSet, mut f: impl FnMut(&FieldElement) -> Result<FieldElement, E>) -> Result<MPoly, E> {
        let mut out = MPoly::zero(self.nvars, field);
        for (m, c) in &self.terms {
            let v = f(c)?;
            if !v.is_zero() {
                out.field = out.field.union(v.vars());
                out.terms.insert(m.clone(), v);
            }
        }
        Ok(out)
    }

    /// Specializes parameters in every coefficient.
    pub fn specialize(&self, bindings: &[(Param, FieldElement)]) -> Result<MPoly, ExactError> {
        let mut field = self.field;
        for (p, _) in bindings {
            field = field.without(*p);
        }
        for (_, v) in bindings {
            field = field.union(v.vars());
        }
        self.try_map_coeffs(field, |c| c.specialize(bindings))
    }

    /// Re-declares the coefficient field (must contain every occurring parameter).
    pub fn with_field(&self, field: ParamSet) -> MPoly {
        MPoly { nvars: self.nvars, field, terms: self.terms.iter().map(|(m, c)| (m.clone(), c.with_vars(field))).collect() }
    }

    /// Exact quotient `self / g`, or the remainder of multivariate division
    /// as a non-divisibility witness.
    pub fn exact_divide(&self, g: &MPoly) -> Result<MPoly, PolyError> {
        self.check_nvars(g)?;
        let (lm, lc) = match g.leading() {
            None => return Err(PolyError::DivisionByZero),
            Some((m, c)) => (m.clone(), c.clone()),
        };
        let lc_inv = lc.inv()?;
        let field = self.field.union(g.field);
        let mut r = self.clone();
        let mut q = MPoly::zero(self.nvars, field);
        let mut rem = MPoly::zero(self.nvars, field);
        let rest: Vec<(Monomial, FieldElement)> =
            g.terms.iter().rev().skip(1).map(|(m, c)| (m.clone(), c.clone())).collect();
        while let Some((m, c)) = r.terms.pop_last() {
            if lm.divides(&m) {
                let qm = m.div(&lm);
                let qc = &c * &lc_inv;
                for (gm, gc) in &rest {
                    r.add_term(gm.mul(&qm), &-(&qc * gc));
                }
                q.add_term(qm, &qc);
            } else {
                rem.add_term(m, &c);
            }
        }
        if rem.is_zero() {
            Ok(q)
        } else {
            Err(PolyError::NonDivisible { remainder: Box::new(rem) })
        }
    }

    /// Canonical serialization: a header line, then one `exponents : coefficient`
    /// line per term in descending term order.
    pub fn to_text(&self) -> String {
        let mut s = format!("mpoly nvars={} params={}\n", self.nvars, self.field);
        for (m, c) in self.terms.iter().rev() {
            let e: Vec<String> = m.0.iter().map(|x| x.to_string()).collect();
            s.push_str(&e.join(" "));
            s.push_str(" : ");
            s.push_str(&text::field_to_text(&c.with_vars(self.field)));
            s.push('\n');
        }
        s
    }

    pub fn from_text(s: &str) -> Result<MPoly, PolyError> {
        let perr = |m: &str| PolyError::Parse(m.to_string());
        let mut lines = s.lines();
        let header = lines.next().ok_or_else(|| perr("empty input"))?;
        let rest = header.strip_prefix("mpoly nvars=").ok_or_else(|| perr("bad header"))?;
        let (n, params) = rest.split_once(" params=").ok_or_else(|| perr("bad header"))?;
        let nvars: usize = n.trim().parse().map_err(|_| perr("bad nvars"))?;
        let field = ParamSet::parse(params).ok_or_else(|| perr("bad params"))?;
        let mut p = MPoly::zero(nvars, field);
        let mut prev: Option<Monomial> = None;
        for line in lines {
            if line.trim().is_empty() {
                continue;
            }
            let (e, c) = line.split_once(" : ").ok_or_else(|| perr("bad term line"))?;
            let exps: Result<Vec<u16>, _> = e.split_whitespace().map(|x| x.parse::<u16>()).collect();
            let exps = exps.map_err(|_| perr("bad exponent"))?;
            if exps.len() != nvars {
                return Err(perr("exponent vector length"));
            }
            let m = Monomial::from_slice(&exps);
            if prev.as_ref().is_some_and(|pm| pm <= &m) {
                return Err(perr("terms not in descending order"));
            }
            let c = text::field_from_text(c, field)?;
            if c.is_zero() {
                return Err(perr("zero coefficient"));
            }
            prev = Some(m.clone());
            p.terms.insert(m, c);
        }
        Ok(p)
    }
}

// Equality is by value: the declared coefficient field is not compared.
impl PartialEq for MPoly {
    fn eq(&self, other: &MPoly) -> bool {
        self.nvars == other.nvars && self.terms == other.terms
    }
}

impl Eq for MPoly {}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            let mut vars = Vec::new();
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => vars.push(format!("z{}", i + 1)),
                    _ => vars.push(format!("z{}^{}", i + 1, e)),
                }
            }
            if vars.is_empty() {
                write!(f, "({c})")?;
            } else if c.is_one() {
                f.write_str(&vars.join("*"))?;
            } else {
                write!(f, "({})*{}", c, vars.join("*"))?;
            }
        }
        Ok(())
    }
}
