//! Polynomial gcd over the integers.
//!
//! Univariate inputs use a modular algorithm with 62-bit primes and Chinese
//! remaindering; multivariate inputs recurse on the first occurring parameter
//! with a primitive pseudo-remainder sequence.

use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::param::{Param, ParamSet};
use super::parampoly::{Exps, ParamPoly};

/// Dense coefficients of a univariate polynomial in `p`, lowest degree first.
pub(crate) fn to_dense(f: &ParamPoly, p: Param) -> Vec<BigInt> {
    let deg = f.degree_in(p) as usize;
    let mut out = vec![BigInt::zero(); if f.is_zero() { 0 } else { deg + 1 }];
    for (e, c) in f.terms() {
        out[e[p.index()] as usize] += c;
    }
    out
}

pub(crate) fn from_dense(c: &[BigInt], p: Param, vars: ParamSet) -> ParamPoly {
    let mut terms = Vec::with_capacity(c.len());
    for (k, x) in c.iter().enumerate().rev() {
        if !x.is_zero() {
            let mut e: Exps = [0; super::param::NPARAMS];
            e[p.index()] = k as u32;
            terms.push((e, x.clone()));
        }
    }
    // Already strictly descending in degree, hence in grlex.
    ParamPoly::from_terms(vars, terms)
}

fn trim(v: &mut Vec<BigInt>) {
    while v.last().is_some_and(|x| x.is_zero()) {
        v.pop();
    }
}

/// Exact division of dense integer polynomials.
pub(crate) fn dense_div_exact(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    let mut r: Vec<BigInt> = a.to_vec();
    trim(&mut r);
    let mut b = b.to_vec();
    trim(&mut b);
    assert!(!b.is_empty(), "division by the zero polynomial");
    if r.is_empty() {
        return Some(Vec::new());
    }
    if r.len() < b.len() {
        return None;
    }
    // Cheap rejection: constant terms must divide when b(0) != 0.
    if !b[0].is_zero() && !(&r[0] % &b[0]).is_zero() {
        return None;
    }
    let lb = b.last().unwrap().clone();
    let db = b.len() - 1;
    let mut q = vec![BigInt::zero(); r.len() - db];
    for k in (0..q.len()).rev() {
        let top = &r[k + db];
        if top.is_zero() {
            continue;
        }
        let (qc, rem) = top.div_rem(&lb);
        if !rem.is_zero() {
            return None;
        }
        for (j, bj) in b.iter().enumerate() {
            if !bj.is_zero() {
                r[k + j] -= &qc * bj;
            }
        }
        q[k] = qc;
    }
    if r.iter().all(|x| x.is_zero()) {
        Some(q)
    } else {
        None
    }
}

fn dense_content(a: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for x in a {
        g = g.gcd(x);
        if g.is_one() {
            break;
        }
    }
    g
}

// ---------------------------------------------------------------------------
// Primes and modular arithmetic

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, m);
        }
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin for 64-bit integers.
fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let mut v = Vec::with_capacity(256);
        let mut n: u64 = (1u64 << 62) - 1;
        while v.len() < 256 {
            if is_prime_u64(n) {
                v.push(n);
            }
            n -= 2;
        }
        v
    })
}

fn reduce(x: &BigInt, p: u64) -> u64 {
    let r = x.mod_floor(&BigInt::from(p));
    r.to_u64().unwrap()
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Monic gcd of two polynomials over Z/p (lowest degree first, trimmed).
fn gcd_mod(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a: Vec<u64> = a.to_vec();
    let mut b: Vec<u64> = b.to_vec();
    let trim = |v: &mut Vec<u64>| {
        while v.last() == Some(&0) {
            v.pop();
        }
    };
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        // a <- a mod b
        let inv = inv_mod(*b.last().unwrap(), p);
        let db = b.len() - 1;
        while a.len() >= b.len() {
            let c = mul_mod(*a.last().unwrap(), inv, p);
            let shift = a.len() - 1 - db;
            for (j, &bj) in b.iter().enumerate() {
                let t = mul_mod(c, bj, p);
                let x = &mut a[shift + j];
                *x = if *x >= t { *x - t } else { *x + p - t };
            }
            trim(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    if let Some(&l) = a.last() {
        let inv = inv_mod(l, p);
        for x in a.iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
    }
    a
}

fn symmetric_rep(x: &BigInt, m: &BigInt) -> BigInt {
    let half: BigInt = m >> 1;
    if x > &half {
        x - m
    } else {
        x.clone()
    }
}

/// gcd of two primitive univariate integer polynomials, returned primitive
/// with positive leading coefficient.
fn univariate_gcd_primitive(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.len() == 1 || b.len() == 1 {
        return vec![BigInt::one()];
    }
    let (short, long) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    if let Some(_) = dense_div_exact(long, short) {
        let mut g = short.to_vec();
        if g.last().unwrap().is_negative() {
            g.iter_mut().for_each(|x| *x = -&*x);
        }
        return g;
    }
    let lc_g = a.last().unwrap().gcd(b.last().unwrap());
    let mut modulus = BigInt::one();
    let mut image: Vec<BigInt> = Vec::new();
    let mut best_deg = usize::MAX;
    for &p in primes() {
        if (&lc_g % BigInt::from(p)).is_zero() {
            continue;
        }
        let am: Vec<u64> = a.iter().map(|x| reduce(x, p)).collect();
        let bm: Vec<u64> = b.iter().map(|x| reduce(x, p)).collect();
        let g = gcd_mod(&am, &bm, p);
        let deg = g.len() - 1;
        if deg == 0 {
            return vec![BigInt::one()];
        }
        if deg > best_deg {
            continue;
        }
        let lcm = reduce(&lc_g, p);
        let g: Vec<u64> = g.iter().map(|&x| mul_mod(x, lcm, p)).collect();
        let pb = BigInt::from(p);
        if deg < best_deg {
            best_deg = deg;
            modulus = pb;
            image = g.iter().map(|&x| BigInt::from(x)).collect();
        } else {
            // CRT: x = image mod modulus, x = g mod p.
            let minv = BigInt::from(inv_mod(reduce(&modulus, p), p));
            let mut changed = false;
            for (k, gk) in g.iter().enumerate() {
                let cur = reduce(&image[k], p);
                let diff = (BigInt::from(*gk) - BigInt::from(cur)).mod_floor(&pb);
                let t = (diff * &minv).mod_floor(&pb);
                if !t.is_zero() {
                    changed = true;
                    image[k] += &modulus * t;
                }
            }
            modulus *= &pb;
            if changed {
                continue;
            }
        }
        // Try the current image (symmetric representation, primitive part).
        let cand: Vec<BigInt> = image.iter().map(|x| symmetric_rep(x, &modulus)).collect();
        let c = dense_content(&cand);
        if c.is_zero() {
            continue;
        }
        let mut cand: Vec<BigInt> = cand.iter().map(|x| x / &c).collect();
        if cand.last().unwrap().is_negative() {
            cand.iter_mut().for_each(|x| *x = -&*x);
        }
        if dense_div_exact(a, &cand).is_some() && dense_div_exact(b, &cand).is_some() {
            return cand;
        }
    }
    panic!("univariate gcd did not converge within the prime table");
}

// ---------------------------------------------------------------------------
// Public entry points

fn normalize_sign(f: ParamPoly) -> ParamPoly {
    if f.leading_sign() < 0 {
        f.neg()
    } else {
        f
    }
}

/// Greatest common divisor in Z[params], content included, with positive
/// leading coefficient. `gcd(0, 0) = 0`.
pub fn gcd(a: &ParamPoly, b: &ParamPoly) -> ParamPoly {
    let vars = a.vars().union(b.vars());
    if a.is_zero() {
        return normalize_sign(b.clone().with_vars(vars));
    }
    if b.is_zero() {
        return normalize_sign(a.clone().with_vars(vars));
    }
    if a.is_constant() || b.is_constant() {
        return ParamPoly::constant(a.content().gcd(&b.content()), vars);
    }
    let oa = a.occurring();
    let ob = b.occurring();
    // A parameter present in only one argument cannot occur in the gcd.
    for p in oa.union(ob).iter() {
        if oa.contains(p) != ob.contains(p) {
            let (with, without) = if oa.contains(p) { (a, b) } else { (b, a) };
            let mut g = without.clone().with_vars(vars);
            for c in with.coeffs_in(p) {
                if c.is_zero() {
                    continue;
                }
                g = gcd(&g, &c);
                if g.is_constant() {
                    break;
                }
            }
            return g;
        }
    }
    if oa.len() == 1 {
        let p = oa.iter().next().unwrap();
        let da = to_dense(a, p);
        let db = to_dense(b, p);
        let ca = dense_content(&da);
        let cb = dense_content(&db);
        let pa: Vec<BigInt> = da.iter().map(|x| x / &ca).collect();
        let pb: Vec<BigInt> = db.iter().map(|x| x / &cb).collect();
        let g = univariate_gcd_primitive(&pa, &pb);
        let c = ca.gcd(&cb);
        let g: Vec<BigInt> = g.iter().map(|x| x * &c).collect();
        return from_dense(&g, p, vars);
    }
    multivariate_gcd(a, b, vars)
}

fn poly_content_in(cs: &[ParamPoly]) -> ParamPoly {
    let mut g = ParamPoly::zero(cs[0].vars());
    for c in cs {
        if c.is_zero() {
            continue;
        }
        g = gcd(&g, c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn div_all(cs: &[ParamPoly], d: &ParamPoly) -> Vec<ParamPoly> {
    if d.is_one() {
        return cs.to_vec();
    }
    cs.iter().map(|c| c.div_exact(d).expect("content divides coefficients")).collect()
}

fn rtrim(v: &mut Vec<ParamPoly>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

/// Pseudo-remainder of `a` by `b` as polynomials in the main variable.
fn prem(a: &[ParamPoly], b: &[ParamPoly]) -> Vec<ParamPoly> {
    let mut r = a.to_vec();
    rtrim(&mut r);
    let lb = b.last().unwrap().clone();
    let db = b.len() - 1;
    while r.len() >= b.len() {
        let lr = r.last().unwrap().clone();
        let shift = r.len() - 1 - db;
        for x in r.iter_mut() {
            *x = x.mul(&lb);
        }
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] = r[shift + j].sub(&lr.mul(bj));
        }
        rtrim(&mut r);
    }
    r
}

fn multivariate_gcd(a: &ParamPoly, b: &ParamPoly, vars: ParamSet) -> ParamPoly {
    if let Some(_) = a.div_exact(b) {
        return normalize_sign(b.clone().with_vars(vars));
    }
    if let Some(_) = b.div_exact(a) {
        return normalize_sign(a.clone().with_vars(vars));
    }
    // Main variable: the occurring parameter of smallest total degree keeps
    // the coefficient ring small.
    let occ = a.occurring();
    let x = occ
        .iter()
        .min_by_key(|&p| a.degree_in(p) + b.degree_in(p))
        .unwrap();
    let ca_all = a.coeffs_in(x);
    let cb_all = b.coeffs_in(x);
    let ca = poly_content_in(&ca_all);
    let cb = poly_content_in(&cb_all);
    let cont = gcd(&ca, &cb);
    let mut pa = div_all(&ca_all, &ca);
    let mut pb = div_all(&cb_all, &cb);
    if pa.len() < pb.len() {
        std::mem::swap(&mut pa, &mut pb);
    }
    let g: Vec<ParamPoly> = loop {
        if pb.len() == 1 {
            break vec![ParamPoly::one(vars)];
        }
        let r = prem(&pa, &pb);
        if r.is_empty() {
            break pb;
        }
        let c = poly_content_in(&r);
        let r = div_all(&r, &c);
        pa = pb;
        pb = r;
    };
    let g = if g.len() > 1 {
        let c = poly_content_in(&g);
        div_all(&g, &c)
    } else {
        g
    };
    let g = ParamPoly::from_coeffs_in(&g, x, vars);
    normalize_sign(g.mul(&cont))
}

/// Unsigned integer helper used by the text layer.
pub(crate) fn parse_bigint(s: &str) -> Option<BigInt> {
    let s = s.trim();
    let (sign, digits) = match s.strip_prefix('-') {
        Some(d) => (Sign::Minus, d),
        None => (Sign::Plus, s.strip_prefix('+').unwrap_or(s)),
    };
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let mag = BigUint::parse_bytes(digits.as_bytes(), 10)?;
    Some(BigInt::from_biguint(if mag.is_zero() { Sign::NoSign } else { sign }, mag))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alpha() -> ParamPoly {
        ParamPoly::param(Param::Alpha, ParamSet::single(Param::Alpha))
    }

    fn int(n: i64, vars: ParamSet) -> ParamPoly {
        ParamPoly::constant(BigInt::from(n), vars)
    }

    #[test]
    fn primes_are_prime() {
        let ps = primes();
        assert!(ps.len() >= 100);
        assert!(ps.iter().all(|&p| p < (1 << 62)));
        assert!(!is_prime_u64(561));
        assert!(is_prime_u64(1_000_000_007));
    }

    #[test]
    fn univariate_gcd_cancels_common_factor() {
        let v = ParamSet::single(Param::Alpha);
        let a = alpha();
        let f = a.mul(&a).sub(&int(1, v)); // a^2 - 1
        let g = a.sub(&int(1, v));
        assert_eq!(gcd(&f, &g), g);
        let h = a.add(&int(2, v)).mul(&a.add(&int(3, v))).scale(&BigInt::from(6));
        let k = a.add(&int(2, v)).scale(&BigInt::from(4));
        assert_eq!(gcd(&h, &k), a.add(&int(2, v)).scale(&BigInt::from(2)));
    }

    #[test]
    fn multivariate_gcd_of_products() {
        let v = ParamSet::of(&[Param::Q, Param::T]);
        let q = ParamPoly::param(Param::Q, v);
        let t = ParamPoly::param(Param::T, v);
        let one = int(1, v);
        let common = one.sub(&q.mul(&t)); // 1 - qt
        let f = common.mul(&one.add(&q));
        let g = common.mul(&one.sub(&t)).mul(&q);
        let expected = common.neg(); // positive leading coefficient: qt - 1
        assert_eq!(gcd(&f, &g), expected);
        assert!(gcd(&one.add(&q), &one.sub(&t)).is_one());
    }
}
