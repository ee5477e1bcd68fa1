use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::gcd::gcd;
use super::param::{Param, ParamSet};
use super::parampoly::{Exps, ParamPoly};
use super::ExactError;

#[derive(Clone, Debug)]
enum Repr {
    Rat(BigRational),
    /// Numerator and denominator, coprime, denominator with positive leading
    /// coefficient and at least one of them non-constant.
    Frac(Box<(ParamPoly, ParamPoly)>),
}

/// An element of Q or of a rational function field Q(params) in canonical
/// normal form.
#[derive(Clone, Debug)]
pub struct FieldElement {
    vars: ParamSet,
    repr: Repr,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Strict field arithmetic: both operands must be declared over the same
/// parameter list.
pub fn field_arith(x: &FieldElement, y: &FieldElement, op: ArithOp) -> Result<FieldElement, ExactError> {
    if x.vars != y.vars {
        return Err(ExactError::ParamMismatch { left: x.vars, right: y.vars });
    }
    Ok(match op {
        ArithOp::Add => x + y,
        ArithOp::Sub => x - y,
        ArithOp::Mul => x * y,
        ArithOp::Div => x.checked_div(y)?,
    })
}

impl FieldElement {
    pub fn zero(vars: ParamSet) -> FieldElement {
        FieldElement { vars, repr: Repr::Rat(BigRational::zero()) }
    }

    pub fn one(vars: ParamSet) -> FieldElement {
        FieldElement { vars, repr: Repr::Rat(BigRational::one()) }
    }

    pub fn from_rational(r: BigRational, vars: ParamSet) -> FieldElement {
        FieldElement { vars, repr: Repr::Rat(r) }
    }

    pub fn from_int(n: impl Into<BigInt>, vars: ParamSet) -> FieldElement {
        FieldElement::from_rational(BigRational::from_integer(n.into()), vars)
    }

    /// `n/d` as a rational constant; panics if `d == 0`.
    pub fn ratio(n: i64, d: i64, vars: ParamSet) -> FieldElement {
        FieldElement::from_rational(BigRational::new(n.into(), d.into()), vars)
    }

    /// The parameter itself as a field element; `vars` must contain it.
    pub fn param(p: Param, vars: ParamSet) -> FieldElement {
        FieldElement::from_poly(ParamPoly::param(p, vars))
    }

    pub fn from_poly(num: ParamPoly) -> FieldElement {
        let vars = num.vars();
        FieldElement::from_polys(num, ParamPoly::one(vars))
    }

    /// `num/den` normalized. Panics if `den` is zero.
    pub fn from_polys(num: ParamPoly, den: ParamPoly) -> FieldElement {
        assert!(!den.is_zero(), "zero denominator");
        let vars = num.vars().union(den.vars());
        let g = gcd(&num, &den);
        let (n, d) = if g.is_one() { (num, den) } else { (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap()) };
        FieldElement::from_coprime(n.with_vars(vars), d.with_vars(vars), vars)
    }

    fn from_coprime(mut n: ParamPoly, mut d: ParamPoly, vars: ParamSet) -> FieldElement {
        if d.leading_sign() < 0 {
            n = n.neg();
            d = d.neg();
        }
        match (n.as_constant(), d.as_constant()) {
            (Some(a), Some(b)) => FieldElement::from_rational(BigRational::new(a, b), vars),
            _ => FieldElement { vars, repr: Repr::Frac(Box::new((n, d))) },
        }
    }

    pub fn vars(&self) -> ParamSet {
        self.vars
    }

    /// Re-declares the element over a larger parameter list.
    pub fn with_vars(&self, vars: ParamSet) -> FieldElement {
        match &self.repr {
            Repr::Rat(r) => FieldElement::from_rational(r.clone(), vars),
            Repr::Frac(b) => FieldElement {
                vars,
                repr: Repr::Frac(Box::new((b.0.clone().with_vars(vars), b.1.clone().with_vars(vars)))),
            },
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(&self.repr, Repr::Rat(r) if r.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(&self.repr, Repr::Rat(r) if r.is_one())
    }

    /// The rational value if the element is a constant.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.repr {
            Repr::Rat(r) => Some(r),
            Repr::Frac(_) => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        matches!(self.repr, Repr::Rat(_))
    }

    pub fn numer(&self) -> ParamPoly {
        match &self.repr {
            Repr::Rat(r) => ParamPoly::constant(r.numer().clone(), self.vars),
            Repr::Frac(b) => b.0.clone(),
        }
    }

    pub fn denom(&self) -> ParamPoly {
        match &self.repr {
            Repr::Rat(r) => ParamPoly::constant(r.denom().clone(), self.vars),
            Repr::Frac(b) => b.1.clone(),
        }
    }

    /// Parameters that actually occur in the element.
    pub fn occurring(&self) -> ParamSet {
        match &self.repr {
            Repr::Rat(_) => ParamSet::EMPTY,
            Repr::Frac(b) => b.0.occurring().union(b.1.occurring()),
        }
    }

    pub fn is_negative_constant(&self) -> bool {
        matches!(&self.repr, Repr::Rat(r) if r.is_negative())
    }

    pub fn inv(&self) -> Result<FieldElement, ExactError> {
        match &self.repr {
            Repr::Rat(r) => {
                if r.is_zero() {
                    Err(ExactError::DivisionByZero)
                } else {
                    Ok(FieldElement::from_rational(r.recip(), self.vars))
                }
            }
            Repr::Frac(b) => Ok(FieldElement::from_coprime(b.1.clone(), b.0.clone(), self.vars)),
        }
    }

    pub fn checked_div(&self, other: &FieldElement) -> Result<FieldElement, ExactError> {
        Ok(self * &other.inv()?)
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, e: i64) -> Result<FieldElement, ExactError> {
        if e < 0 {
            return self.inv()?.pow(-e);
        }
        let e = e as u32;
        if e == 0 {
            return Ok(FieldElement::one(self.vars));
        }
        Ok(match &self.repr {
            Repr::Rat(r) => FieldElement::from_rational(num_traits::pow(r.clone(), e as usize), self.vars),
            Repr::Frac(b) => FieldElement { vars: self.vars, repr: Repr::Frac(Box::new((b.0.pow(e), b.1.pow(e)))) },
        })
    }

    fn parts(&self, vars: ParamSet) -> (ParamPoly, ParamPoly) {
        match &self.repr {
            Repr::Rat(r) => (ParamPoly::constant(r.numer().clone(), vars), ParamPoly::constant(r.denom().clone(), vars)),
            Repr::Frac(b) => (b.0.clone().with_vars(vars), b.1.clone().with_vars(vars)),
        }
    }

    fn add_impl(&self, other: &FieldElement, negate: bool) -> FieldElement {
        let vars = self.vars.union(other.vars);
        if let (Repr::Rat(a), Repr::Rat(b)) = (&self.repr, &other.repr) {
            return FieldElement::from_rational(if negate { a - b } else { a + b }, vars);
        }
        if other.is_zero() {
            return self.with_vars(vars);
        }
        if self.is_zero() {
            let o = other.with_vars(vars);
            return if negate { -o } else { o };
        }
        let (n1, d1) = self.parts(vars);
        let (mut n2, d2) = other.parts(vars);
        if negate {
            n2 = n2.neg();
        }
        // Henrici: with g = gcd(d1, d2) only factors of g can cancel.
        let g = gcd(&d1, &d2);
        let (d1p, d2p) = if g.is_one() { (d1.clone(), d2.clone()) } else { (d1.div_exact(&g).unwrap(), d2.div_exact(&g).unwrap()) };
        let t = n1.mul(&d2p).add(&n2.mul(&d1p));
        if t.is_zero() {
            return FieldElement::zero(vars);
        }
        let g2 = gcd(&t, &g);
        let (t, gq) = if g2.is_one() { (t, g) } else { (t.div_exact(&g2).unwrap(), g.div_exact(&g2).unwrap()) };
        FieldElement::from_coprime(t, d1p.mul(&d2p).mul(&gq), vars)
    }

    fn mul_impl(&self, other: &FieldElement) -> FieldElement {
        let vars = self.vars.union(other.vars);
        if let (Repr::Rat(a), Repr::Rat(b)) = (&self.repr, &other.repr) {
            return FieldElement::from_rational(a * b, vars);
        }
        if self.is_zero() || other.is_zero() {
            return FieldElement::zero(vars);
        }
        if self.is_one() {
            return other.with_vars(vars);
        }
        if other.is_one() {
            return self.with_vars(vars);
        }
        let (n1, d1) = self.parts(vars);
        let (n2, d2) = other.parts(vars);
        let g1 = gcd(&n1, &d2);
        let g2 = gcd(&n2, &d1);
        let cut = |f: ParamPoly, g: &ParamPoly| if g.is_one() { f } else { f.div_exact(g).unwrap() };
        let n = cut(n1, &g1).mul(&cut(n2, &g2));
        let d = cut(d1, &g2).mul(&cut(d2, &g1));
        FieldElement::from_coprime(n, d, vars)
    }

    /// Substitutes values for some parameters and renormalizes. The result is
    /// declared over the unbound parameters plus those of the bound values.
    pub fn specialize(&self, bindings: &[(Param, FieldElement)]) -> Result<FieldElement, ExactError> {
        let mut out_vars = self.vars;
        for (p, _) in bindings {
            out_vars = out_vars.without(*p);
        }
        for (_, v) in bindings {
            out_vars = out_vars.union(v.vars);
        }
        let occ = self.occurring();
        let active: Vec<&(Param, FieldElement)> = bindings.iter().filter(|(p, _)| occ.contains(*p)).collect();
        if active.is_empty() {
            return Ok(self.with_vars(out_vars));
        }
        let (num, den) = self.parts(self.vars);
        let mut ev = Evaluator::new(&active, &num, &den, out_vars);
        let n = ev.eval(&num);
        let d = ev.eval(&den);
        if d.is_zero() {
            let names: Vec<String> = active.iter().map(|(p, v)| format!("{}={}", p.name(), v)).collect();
            return Err(ExactError::Pole { binding: names.join(", ") });
        }
        Ok(FieldElement::from_polys(n, d))
    }

    /// Evaluates an element with no parameters left at a rational value.
    pub fn to_rational(&self) -> Option<BigRational> {
        self.as_rational().cloned()
    }
}

/// Clears denominators of the bound values so that evaluating numerator and
/// denominator gives two polynomials with the same implicit scale factor.
struct Evaluator {
    bindings: Vec<(Param, ParamPoly, ParamPoly)>,
    /// Per binding, the maximal degree over numerator and denominator.
    maxdeg: Vec<u32>,
    cache: HashMap<(usize, u32, bool), ParamPoly>,
    out_vars: ParamSet,
}

impl Evaluator {
    fn new(active: &[&(Param, FieldElement)], num: &ParamPoly, den: &ParamPoly, out_vars: ParamSet) -> Evaluator {
        let bindings: Vec<(Param, ParamPoly, ParamPoly)> = active
            .iter()
            .map(|(p, v)| {
                let (n, d) = v.parts(out_vars);
                (*p, n, d)
            })
            .collect();
        let maxdeg = bindings.iter().map(|(p, _, _)| num.degree_in(*p).max(den.degree_in(*p))).collect();
        Evaluator { bindings, maxdeg, cache: HashMap::new(), out_vars }
    }

    fn power(&mut self, j: usize, e: u32, of_den: bool) -> ParamPoly {
        if let Some(v) = self.cache.get(&(j, e, of_den)) {
            return v.clone();
        }
        let base = if of_den { self.bindings[j].2.clone() } else { self.bindings[j].1.clone() };
        let v = if e == 0 {
            ParamPoly::one(self.out_vars)
        } else if e == 1 {
            base
        } else {
            let half = self.power(j, e / 2, of_den);
            let sq = half.mul(&half);
            if e % 2 == 1 {
                sq.mul(&base)
            } else {
                sq
            }
        };
        self.cache.insert((j, e, of_den), v.clone());
        v
    }

    fn eval(&mut self, f: &ParamPoly) -> ParamPoly {
        // Group terms by the exponents of the bound parameters so each
        // combination of powers is multiplied out once.
        let mut groups: HashMap<Vec<u32>, Vec<(Exps, BigInt)>> = HashMap::new();
        for (e, c) in f.terms() {
            let key: Vec<u32> = self.bindings.iter().map(|(p, _, _)| e[p.index()]).collect();
            let mut rest = *e;
            for (p, _, _) in &self.bindings {
                rest[p.index()] = 0;
            }
            groups.entry(key).or_default().push((rest, c.clone()));
        }
        let mut keys: Vec<Vec<u32>> = groups.keys().cloned().collect();
        keys.sort();
        let mut total = ParamPoly::zero(self.out_vars);
        for key in keys {
            let rest = ParamPoly::from_terms(self.out_vars, groups.remove(&key).unwrap());
            let mut factor = ParamPoly::one(self.out_vars);
            for (j, &e) in key.iter().enumerate() {
                let d = self.bindings[j].2.clone();
                if e > 0 {
                    factor = factor.mul(&self.power(j, e, false));
                }
                let de = self.maxdeg[j] - e;
                if de > 0 && !d.is_one() {
                    factor = factor.mul(&self.power(j, de, true));
                }
            }
            total = total.add(&rest.mul(&factor));
        }
        total
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &FieldElement) -> bool {
        match (&self.repr, &other.repr) {
            (Repr::Rat(a), Repr::Rat(b)) => a == b,
            (Repr::Frac(a), Repr::Frac(b)) => a.0.terms() == b.0.terms() && a.1.terms() == b.1.terms(),
            _ => false,
        }
    }
}

impl Eq for FieldElement {}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match &self.repr {
            Repr::Rat(r) => {
                0u8.hash(state);
                r.hash(state);
            }
            Repr::Frac(b) => {
                1u8.hash(state);
                b.0.terms().hash(state);
                b.1.terms().hash(state);
            }
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Rat(r) => write!(f, "{r}"),
            Repr::Frac(b) => {
                if b.1.is_one() {
                    write!(f, "{}", b.0)
                } else if b.0.len() == 1 && b.0.is_constant() {
                    write!(f, "{}/({})", b.0, b.1)
                } else {
                    write!(f, "({})/({})", b.0, b.1)
                }
            }
        }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: &FieldElement) -> FieldElement {
                let f: fn(&FieldElement, &FieldElement) -> FieldElement = $body;
                f(self, rhs)
            }
        }
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: &FieldElement) -> FieldElement {
                (&self).$m(rhs)
            }
        }
        impl $tr<FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement {
                self.$m(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| a.add_impl(b, false));
forward_binop!(Sub, sub, |a, b| a.add_impl(b, true));
forward_binop!(Mul, mul, |a, b| a.mul_impl(b));
forward_binop!(Div, div, |a, b| a.checked_div(b).expect("division by zero"));

impl AddAssign<&FieldElement> for FieldElement {
    fn add_assign(&mut self, rhs: &FieldElement) {
        *self = self.add_impl(rhs, false);
    }
}

impl SubAssign<&FieldElement> for FieldElement {
    fn sub_assign(&mut self, rhs: &FieldElement) {
        *self = self.add_impl(rhs, true);
    }
}

impl MulAssign<&FieldElement> for FieldElement {
    fn mul_assign(&mut self, rhs: &FieldElement) {
        *self = self.mul_impl(rhs);
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        match &self.repr {
            Repr::Rat(r) => FieldElement::from_rational(-r, self.vars),
            Repr::Frac(b) => FieldElement { vars: self.vars, repr: Repr::Frac(Box::new((b.0.neg(), b.1.clone()))) },
        }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

/// Least common multiple helper for callers clearing rational coefficients.
pub fn lcm_denoms<'a>(xs: impl IntoIterator<Item = &'a BigRational>) -> BigInt {
    xs.into_iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}
