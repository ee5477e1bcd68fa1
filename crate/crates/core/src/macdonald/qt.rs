use std::collections::HashMap;
use std::fmt;

use num_integer::Integer;

use crate::exactnum::{BigInt, Exps, FieldElement, Param, ParamPoly, ParamSet};

/// The parameters (q, t): free, or q = p^d and t = +-p^e.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum QtMode {
    Generic,
    P { d: i64, e: i64, t_negative: bool },
}

impl QtMode {
    /// q = p^d, t = p^e with the common factor of the exponents removed.
    pub fn p_power(d: i64, e: i64) -> QtMode {
        assert!(d > 0, "q = p^d needs d > 0");
        let g = d.gcd(&e);
        QtMode::P { d: d / g, e: e / g, t_negative: false }
    }

    /// As given, without reduction; used when other quantities share the
    /// same p.
    pub fn p_exact(d: i64, e: i64) -> QtMode {
        assert!(d > 0, "q = p^d needs d > 0");
        QtMode::P { d, e, t_negative: false }
    }

    pub fn field(&self) -> ParamSet {
        match self {
            QtMode::Generic => ParamSet::of(&[Param::Q, Param::T]),
            QtMode::P { .. } => ParamSet::single(Param::P),
        }
    }

    pub fn p(&self) -> FieldElement {
        FieldElement::param(Param::P, self.field())
    }

    /// p^k for a (possibly negative) integer k.
    pub fn p_pow(&self, k: i64) -> FieldElement {
        self.p().pow(k).unwrap()
    }

    pub fn q(&self) -> FieldElement {
        match self {
            QtMode::Generic => FieldElement::param(Param::Q, self.field()),
            QtMode::P { d, .. } => self.p_pow(*d),
        }
    }

    pub fn t(&self) -> FieldElement {
        match self {
            QtMode::Generic => FieldElement::param(Param::T, self.field()),
            QtMode::P { e, t_negative, .. } => {
                let v = self.p_pow(*e);
                if *t_negative {
                    -v
                } else {
                    v
                }
            }
        }
    }

    /// The mode with t replaced by q t.
    pub fn with_qt(&self) -> Option<QtMode> {
        match *self {
            QtMode::Generic => None,
            QtMode::P { d, e, t_negative } => Some(QtMode::P { d, e: d + e, t_negative }),
        }
    }

    /// Sum of integer-weighted q^a t^b as a field element.
    pub(crate) fn collect(&self, acc: &QtAccumulator) -> FieldElement {
        let field = self.field();
        match self {
            QtMode::Generic => {
                let terms: Vec<(Exps, BigInt)> = acc
                    .terms
                    .iter()
                    .filter(|(_, c)| **c != 0)
                    .map(|(&(a, b), &c)| {
                        let mut e = [0u32; 5];
                        e[Param::Q.index()] = a;
                        e[Param::T.index()] = b;
                        (e, BigInt::from(c))
                    })
                    .collect();
                FieldElement::from_poly(ParamPoly::from_terms(field, terms))
            }
            QtMode::P { d, e, t_negative } => {
                let mut by_exp: HashMap<i64, i64> = HashMap::new();
                for (&(a, b), &c) in &acc.terms {
                    let sign = if *t_negative && b % 2 == 1 { -1 } else { 1 };
                    *by_exp.entry(d * a as i64 + e * b as i64).or_insert(0) += sign * c;
                }
                by_exp.retain(|_, c| *c != 0);
                let Some(&min) = by_exp.keys().min() else {
                    return FieldElement::zero(field);
                };
                let shift = min.min(0);
                let terms: Vec<(Exps, BigInt)> = by_exp
                    .iter()
                    .map(|(&k, &c)| {
                        let mut ex = [0u32; 5];
                        ex[Param::P.index()] = (k - shift) as u32;
                        (ex, BigInt::from(c))
                    })
                    .collect();
                let num = FieldElement::from_poly(ParamPoly::from_terms(field, terms));
                &num * &self.p_pow(shift)
            }
        }
    }
}

impl fmt::Display for QtMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QtMode::Generic => write!(f, "generic"),
            QtMode::P { d, e, t_negative } => write!(f, "p^{},{}p^{}", d, if *t_negative { "-" } else { "" }, e),
        }
    }
}

/// Integer combination of monomials q^a t^b.
#[derive(Default, Clone, Debug)]
pub(crate) struct QtAccumulator {
    pub terms: HashMap<(u32, u32), i64>,
}

impl QtAccumulator {
    pub fn add(&mut self, a: u32, b: u32, c: i64) {
        *self.terms.entry((a, b)).or_insert(0) += c;
    }
}
