//! Canonical text form of parameter polynomials and field elements.
//!
//! A polynomial is written as `;`-separated terms `c@e1,e2,...` in term order,
//! where the exponents run over the declared parameters (`0` for the zero
//! polynomial). A field element is either a rational `n` / `n/d` or
//! `(num)/(den)` with both parts in polynomial form.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::gcd::parse_bigint;
use super::param::{ParamSet, NPARAMS};
use super::parampoly::{Exps, ParamPoly};
use super::{ExactError, FieldElement};

pub fn poly_to_text(f: &ParamPoly) -> String {
    if f.is_zero() {
        return "0".to_string();
    }
    let vars: Vec<usize> = f.vars().iter().map(|p| p.index()).collect();
    let mut out = String::new();
    for (k, (e, c)) in f.terms().iter().enumerate() {
        if k > 0 {
            out.push(';');
        }
        out.push_str(&c.to_string());
        out.push('@');
        let exps: Vec<String> = vars.iter().map(|&i| e[i].to_string()).collect();
        out.push_str(&exps.join(","));
    }
    out
}

fn parse_err(msg: impl Into<String>) -> ExactError {
    ExactError::Parse(msg.into())
}

pub fn poly_from_text(s: &str, vars: ParamSet) -> Result<ParamPoly, ExactError> {
    let s = s.trim();
    if s == "0" {
        return Ok(ParamPoly::zero(vars));
    }
    let idx: Vec<usize> = vars.iter().map(|p| p.index()).collect();
    let mut terms = Vec::new();
    for t in s.split(';') {
        let (c, e) = t.split_once('@').ok_or_else(|| parse_err(format!("term without '@': {t}")))?;
        let c = parse_bigint(c).ok_or_else(|| parse_err(format!("bad coefficient: {c}")))?;
        if c.is_zero() {
            return Err(parse_err("zero coefficient stored"));
        }
        let mut exps: Exps = [0; NPARAMS];
        let parts: Vec<&str> = if e.is_empty() { Vec::new() } else { e.split(',').collect() };
        if parts.len() != idx.len() {
            return Err(parse_err(format!("exponent vector {e} does not match {vars}")));
        }
        for (i, x) in idx.iter().zip(parts) {
            exps[*i] = x.trim().parse().map_err(|_| parse_err(format!("bad exponent: {x}")))?;
        }
        terms.push((exps, c));
    }
    let f = ParamPoly::from_terms(vars, terms.clone());
    if f.len() != terms.len() || f.terms() != terms.as_slice() {
        return Err(parse_err("terms not in canonical order"));
    }
    Ok(f)
}

pub fn field_to_text(x: &FieldElement) -> String {
    match x.as_rational() {
        Some(r) => r.to_string(),
        None => format!("({})/({})", poly_to_text(&x.numer()), poly_to_text(&x.denom())),
    }
}

pub fn field_from_text(s: &str, vars: ParamSet) -> Result<FieldElement, ExactError> {
    let s = s.trim();
    if let Some(rest) = s.strip_prefix('(') {
        let (n, d) = rest
            .split_once(")/(")
            .ok_or_else(|| parse_err(format!("malformed fraction: {s}")))?;
        let d = d.strip_suffix(')').ok_or_else(|| parse_err(format!("malformed fraction: {s}")))?;
        let n = poly_from_text(n, vars)?;
        let d = poly_from_text(d, vars)?;
        if d.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        let x = FieldElement::from_polys(n.clone(), d.clone());
        // Reject non-canonical input so that text equality matches value equality.
        if x.numer() != n || x.denom() != d {
            return Err(parse_err(format!("fraction not in normal form: {s}")));
        }
        return Ok(x);
    }
    let r = parse_rational(s).ok_or_else(|| parse_err(format!("bad rational: {s}")))?;
    Ok(FieldElement::from_rational(r, vars))
}

pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n = parse_bigint(n)?;
            let d: BigInt = parse_bigint(d)?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(n, d))
        }
        None => Some(BigRational::from_integer(parse_bigint(s)?)),
    }
}
