//! Partitions, compositions, their orders, the clustering partitions
//! kappa(k,r,s,m) and the eigenvalue formulas.

use std::cmp::Ordering;
use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use num_integer::Integer;
use num_rational::BigRational;
use thiserror::Error;

use crate::exactnum::{FieldElement, ParamSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("moduli differ: {0} vs {1}")]
    ModulusMismatch(usize, usize),
    #[error("parts are not weakly decreasing: {0:?}")]
    NotDecreasing(Vec<usize>),
    #[error("{0} nonzero parts do not fit in {1} variables")]
    TooLong(usize, usize),
    #[error("gcd(k+1, r-1) = gcd({0}, {1}) is not 1")]
    NotCoprime(usize, usize),
    #[error("m = {m} must satisfy 1 <= m <= k = {k}")]
    MOutOfRange { m: usize, k: usize },
    #[error("invalid parameters: {0}")]
    Invalid(String),
    #[error("cannot parse partition '{0}'")]
    Parse(String),
}

/// A weakly decreasing tuple of length N.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<usize>);

/// An arbitrary tuple of length N.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition(Vec<usize>);

impl Partition {
    /// Pads `parts` with zeros to length `n`; trailing zeros beyond `n` are dropped.
    pub fn new(parts: &[usize], n: usize) -> Result<Partition, PartitionError> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(PartitionError::NotDecreasing(parts.to_vec()));
        }
        let nonzero = parts.iter().filter(|&&x| x > 0).count();
        if nonzero > n {
            return Err(PartitionError::TooLong(nonzero, n));
        }
        let mut v: Vec<usize> = parts.iter().copied().filter(|&x| x > 0).collect();
        v.resize(n, 0);
        Ok(Partition(v))
    }

    pub fn zero(n: usize) -> Partition {
        Partition(vec![0; n])
    }

    /// delta = (N-1, ..., 1, 0).
    pub fn delta(n: usize) -> Partition {
        Partition((0..n).rev().collect())
    }

    pub fn from_freqs(freqs: &[usize]) -> Partition {
        let mut v = Vec::new();
        for (j, &f) in freqs.iter().enumerate().rev() {
            v.extend(std::iter::repeat(j).take(f));
        }
        Partition(v)
    }

    /// Frequencies f_0, f_1, ..., f_{max part}.
    pub fn to_freqs(&self) -> Vec<usize> {
        let top = self.0.first().copied().unwrap_or(0);
        let mut f = vec![0; top + 1];
        for &x in &self.0 {
            f[x] += 1;
        }
        f
    }

    /// Accepts `4,2,0`, `(4,2,0)` or frequency notation `[f0,f1,...]`. With
    /// `n = None` the length is the number of listed parts (or the sum of
    /// frequencies).
    pub fn parse(s: &str, n: Option<usize>) -> Result<Partition, PartitionError> {
        let s = s.trim();
        let nums = |body: &str| -> Result<Vec<usize>, PartitionError> {
            if body.trim().is_empty() {
                return Ok(Vec::new());
            }
            body.split(',').map(|x| x.trim().parse::<usize>().map_err(|_| PartitionError::Parse(s.to_string()))).collect()
        };
        let p = if let Some(body) = s.strip_prefix('[').and_then(|b| b.strip_suffix(']')) {
            Partition::from_freqs(&nums(body)?)
        } else {
            let body = s.strip_prefix('(').and_then(|b| b.strip_suffix(')')).unwrap_or(s);
            let parts = nums(body)?;
            let len = parts.len();
            Partition::new(&parts, len)?
        };
        match n {
            None => Ok(p),
            Some(n) => Partition::new(&p.0, n),
        }
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn modulus(&self) -> usize {
        self.0.iter().sum()
    }

    /// Number of nonzero parts.
    pub fn length(&self) -> usize {
        self.0.iter().filter(|&&x| x > 0).count()
    }

    pub fn with_n(&self, n: usize) -> Result<Partition, PartitionError> {
        Partition::new(&self.0, n)
    }

    pub fn add(&self, other: &Partition) -> Partition {
        assert_eq!(self.n(), other.n());
        Partition(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, c: usize) -> Partition {
        Partition(self.0.iter().map(|x| x * c).collect())
    }

    pub fn as_composition(&self) -> Composition {
        Composition(self.0.clone())
    }

    /// mu is contained in self (as diagrams).
    pub fn contains(&self, mu: &Partition) -> bool {
        self.0.iter().zip(&mu.0).all(|(a, b)| a >= b)
    }

    /// Fixed total order refining dominance: lexicographic on parts.
    pub fn total_cmp(&self, other: &Partition) -> Ordering {
        self.0.cmp(&other.0)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

impl Composition {
    pub fn new(parts: &[usize]) -> Composition {
        Composition(parts.to_vec())
    }

    pub fn parse(s: &str) -> Result<Composition, PartitionError> {
        let s = s.trim();
        let body = s.strip_prefix('(').and_then(|b| b.strip_suffix(')')).unwrap_or(s);
        let parts: Result<Vec<usize>, _> = body.split(',').map(|x| x.trim().parse::<usize>()).collect();
        parts.map(Composition).map_err(|_| PartitionError::Parse(s.to_string()))
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn modulus(&self) -> usize {
        self.0.iter().sum()
    }

    /// The partition eta^+ obtained by sorting.
    pub fn sorted(&self) -> Partition {
        let mut v = self.0.clone();
        v.sort_unstable_by(|a, b| b.cmp(a));
        Partition(v)
    }

    /// Total order refining the Bruhat order: compare eta^+ lexicographically,
    /// then eta itself lexicographically.
    pub fn total_cmp(&self, other: &Composition) -> Ordering {
        self.sorted().0.cmp(&other.sorted().0).then_with(|| self.0.cmp(&other.0))
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

/// mu < kappa in dominance (strict).
pub fn dominance_less(mu: &Partition, kappa: &Partition) -> Result<bool, PartitionError> {
    if mu.modulus() != kappa.modulus() {
        return Err(PartitionError::ModulusMismatch(mu.modulus(), kappa.modulus()));
    }
    Ok(mu != kappa && dominated(mu.parts(), kappa.parts()))
}

fn dominated(mu: &[usize], kappa: &[usize]) -> bool {
    let (mut a, mut b) = (0usize, 0usize);
    for i in 0..mu.len().max(kappa.len()) {
        a += mu.get(i).copied().unwrap_or(0);
        b += kappa.get(i).copied().unwrap_or(0);
        if a > b {
            return false;
        }
    }
    true
}

/// nu strictly below eta in the Bruhat order on compositions.
pub fn bruhat_less(nu: &Composition, eta: &Composition) -> Result<bool, PartitionError> {
    if nu.modulus() != eta.modulus() {
        return Err(PartitionError::ModulusMismatch(nu.modulus(), eta.modulus()));
    }
    let (np, ep) = (nu.sorted(), eta.sorted());
    if np != ep {
        return dominance_less(&np, &ep);
    }
    if nu == eta {
        return Ok(false);
    }
    // Same orbit: search swaps s_ij (i<j, eta_i > eta_j) starting from eta.
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut queue = VecDeque::new();
    queue.push_back(eta.0.clone());
    seen.insert(eta.0.clone());
    while let Some(cur) = queue.pop_front() {
        for i in 0..cur.len() {
            for j in i + 1..cur.len() {
                if cur[i] > cur[j] {
                    let mut next = cur.clone();
                    next.swap(i, j);
                    if next == nu.0 {
                        return Ok(true);
                    }
                    if seen.insert(next.clone()) {
                        queue.push_back(next);
                    }
                }
            }
        }
    }
    Ok(false)
}

/// All partitions of `m` with at most `n` parts, padded to length `n`,
/// in decreasing lexicographic order.
pub fn partitions_of(m: usize, n: usize) -> Vec<Partition> {
    fn rec(rem: usize, max: usize, slots: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>, n: usize) {
        if rem == 0 {
            let mut v = cur.clone();
            v.resize(n, 0);
            out.push(Partition(v));
            return;
        }
        if slots == 0 {
            return;
        }
        for p in (1..=max.min(rem)).rev() {
            cur.push(p);
            rec(rem - p, p, slots - 1, cur, out, n);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(m, m, n, &mut Vec::new(), &mut out, n);
    out
}

/// Partitions mu with mu <= kappa in dominance (kappa included), in
/// decreasing lexicographic order.
pub fn dominated_partitions(kappa: &Partition) -> Vec<Partition> {
    partitions_of(kappa.modulus(), kappa.n()).into_iter().filter(|mu| dominated(mu.parts(), kappa.parts())).collect()
}

/// Distinct rearrangements of a partition, as compositions.
pub fn rearrangements(kappa: &Partition) -> Vec<Composition> {
    let mut asc: Vec<u16> = kappa.0.iter().map(|&x| x as u16).collect();
    asc.sort_unstable();
    crate::mpoly::distinct_rearrangements(&asc)
        .into_iter()
        .map(|v| Composition(v.into_iter().map(|x| x as usize).collect()))
        .collect()
}

/// Partitions mu contained in kappa (same length N).
pub fn sub_partitions(kappa: &Partition) -> Vec<Partition> {
    fn rec(k: &[usize], i: usize, prev: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if i == k.len() {
            out.push(Partition(cur.clone()));
            return;
        }
        for v in (0..=k[i].min(prev)).rev() {
            cur.push(v);
            rec(k, i + 1, v, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(&kappa.0, 0, usize::MAX, &mut Vec::new(), &mut out);
    out
}

/// Output of [`build_kappa`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KappaData {
    pub kappa: Partition,
    pub n: usize,
    pub alpha: BigRational,
    pub n0: usize,
}

/// kappa(k,r,s,m) with `b` interior k-blocks, from the frequency form
/// [n0, 0^{(r-1)s}, k, 0^{r-1}, k, ..., 0^{r-1}, m] with n0 = (k+1)s - 1.
pub fn build_kappa(k: usize, r: usize, s: usize, m: usize, b: usize) -> Result<KappaData, PartitionError> {
    if k == 0 || r < 2 || s == 0 {
        return Err(PartitionError::Invalid(format!("need k >= 1, r >= 2, s >= 1 (got k={k}, r={r}, s={s})")));
    }
    if (k + 1).gcd(&(r - 1)) != 1 {
        return Err(PartitionError::NotCoprime(k + 1, r - 1));
    }
    if m == 0 || m > k {
        return Err(PartitionError::MOutOfRange { m, k });
    }
    let n0 = (k + 1) * s - 1;
    let base = (r - 1) * s + 1;
    let top = base + b * r;
    let mut freqs = vec![0; top + 1];
    freqs[0] = n0;
    for j in 0..b {
        freqs[base + j * r] = k;
    }
    freqs[top] = m;
    let kappa = Partition::from_freqs(&freqs);
    let n = n0 + b * k + m;
    debug_assert_eq!(kappa.n(), n);
    // Generalized exclusion principle on the nonzero parts.
    let nz: Vec<usize> = kappa.parts().iter().copied().filter(|&x| x > 0).collect();
    for i in 0..nz.len() {
        if i + k < nz.len() && nz[i] - nz[i + k] < r {
            return Err(PartitionError::Invalid(format!("admissibility fails at part {}", i + 1)));
        }
    }
    let alpha = crate::exactnum::rat(-(k as i64 + 1), r as i64 - 1);
    Ok(KappaData { kappa, n, alpha, n0 })
}

fn int(x: i64, vars: ParamSet) -> FieldElement {
    FieldElement::from_int(x, vars)
}

/// e(kappa; alpha) = sum k_j(k_j - 1) + (alpha(N-1)+1)|kappa| - 2 alpha sum (j-1) k_j.
pub fn eigen_jack_sym(kappa: &Partition, alpha: &FieldElement) -> FieldElement {
    let v = alpha.vars();
    let n = kappa.n() as i64;
    let k = kappa.parts();
    let a: i64 = k.iter().map(|&x| (x * x.saturating_sub(1)) as i64).sum();
    let m = kappa.modulus() as i64;
    let w: i64 = k.iter().enumerate().map(|(j, &x)| (j * x) as i64).sum();
    let coeff_alpha = (n - 1) * m - 2 * w;
    &int(a + m, v) + &(alpha * &int(coeff_alpha, v))
}

/// Nonsymmetric Jack eigenvalue: alpha eta_i - #{k<i: eta_k >= eta_i} - #{k>i: eta_k > eta_i}
/// (0-based `i`).
pub fn eigen_jack_nonsym(eta: &Composition, i: usize, alpha: &FieldElement) -> FieldElement {
    let e = eta.parts();
    let before = e[..i].iter().filter(|&&x| x >= e[i]).count() as i64;
    let after = e[i + 1..].iter().filter(|&&x| x > e[i]).count() as i64;
    &(alpha * &int(e[i] as i64, alpha.vars())) - &int(before + after, alpha.vars())
}

/// e(kappa; q, t) = sum_i q^{kappa_i} t^{N-i}.
pub fn eigen_macdonald_sym(kappa: &Partition, q: &FieldElement, t: &FieldElement) -> FieldElement {
    let n = kappa.n();
    let mut s = FieldElement::zero(q.vars().union(t.vars()));
    for (i, &k) in kappa.parts().iter().enumerate() {
        s += &(q.pow(k as i64).unwrap() * t.pow((n - 1 - i) as i64).unwrap());
    }
    s
}

/// l'_eta(i) = #{j<i: eta_j >= eta_i} + #{j>i: eta_j > eta_i} (0-based `i`).
pub fn l_prime(eta: &Composition, i: usize) -> i64 {
    let e = eta.parts();
    let before = e[..i].iter().filter(|&&x| x >= e[i]).count() as i64;
    let after = e[i + 1..].iter().filter(|&&x| x > e[i]).count() as i64;
    before + after
}

/// Nonsymmetric Macdonald eigenvalue q^{eta_i} t^{-l'_eta(i)}.
pub fn eigen_macdonald_nonsym(eta: &Composition, i: usize, q: &FieldElement, t: &FieldElement) -> FieldElement {
    q.pow(eta.parts()[i] as i64).unwrap() * t.pow(-l_prime(eta, i)).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{rat, Param};

    fn p(v: &[usize]) -> Partition {
        Partition::new(v, v.len()).unwrap()
    }

    fn c(v: &[usize]) -> Composition {
        Composition::new(v)
    }

    #[test]
    fn dominance_examples() {
        assert!(dominance_less(&p(&[1, 1, 0]), &p(&[2, 0, 0])).unwrap());
        assert!(!dominance_less(&p(&[2, 0, 0]), &p(&[1, 1, 0])).unwrap());
        assert!(dominance_less(&p(&[2, 1, 1]), &p(&[2, 2, 0])).unwrap());
        assert!(dominance_less(&p(&[2, 0]), &p(&[1, 0])).is_err());
    }

    #[test]
    fn bruhat_examples() {
        assert!(bruhat_less(&c(&[0, 1]), &c(&[1, 0])).unwrap());
        assert!(!bruhat_less(&c(&[1, 0]), &c(&[0, 1])).unwrap());
        assert!(bruhat_less(&c(&[1, 1, 0]), &c(&[2, 0, 0])).unwrap());
        assert!(bruhat_less(&c(&[0, 1, 2]), &c(&[2, 1, 0])).unwrap());
        assert!(!bruhat_less(&c(&[1, 0, 2]), &c(&[0, 2, 1])).unwrap());
    }

    #[test]
    fn build_kappa_examples() {
        let d = build_kappa(1, 2, 1, 1, 1).unwrap();
        assert_eq!((d.kappa.clone(), d.n, d.alpha.clone()), (p(&[4, 2, 0]), 3, rat(-2, 1)));
        let d = build_kappa(2, 2, 1, 2, 0).unwrap();
        assert_eq!((d.kappa.clone(), d.n), (p(&[2, 2, 0, 0]), 4));
        assert_eq!(d.n - d.kappa.length(), 2);
        let d = build_kappa(1, 2, 2, 1, 1).unwrap();
        assert_eq!(d.kappa.to_freqs(), vec![3, 0, 0, 1, 0, 1]);
        assert_eq!((d.kappa.clone(), d.n, d.alpha.clone()), (p(&[5, 3, 0, 0, 0]), 5, rat(-2, 1)));
        assert!(matches!(build_kappa(1, 3, 1, 1, 0), Err(PartitionError::NotCoprime(2, 2))));
        assert!(matches!(build_kappa(1, 2, 1, 2, 0), Err(PartitionError::MOutOfRange { .. })));
    }

    #[test]
    fn frequency_round_trip() {
        let k = p(&[2, 1, 1, 1, 0, 0]);
        assert_eq!(k.to_freqs(), vec![2, 3, 1]);
        assert_eq!(Partition::from_freqs(&k.to_freqs()), k);
        assert_eq!(Partition::parse("[2,3,1]", None).unwrap(), k);
        assert_eq!(Partition::parse("4,2", Some(3)).unwrap(), p(&[4, 2, 0]));
    }

    #[test]
    fn eigenvalue_examples() {
        let al = ParamSet::single(Param::Alpha);
        let a = FieldElement::param(Param::Alpha, al);
        assert!(eigen_jack_sym(&p(&[0, 0, 0]), &a).is_zero());
        let two = FieldElement::from_int(2, al);
        assert_eq!(eigen_jack_sym(&p(&[2, 0]), &a), &(&a * &two) + &FieldElement::from_int(4, al));
        assert_eq!(eigen_jack_sym(&p(&[1, 1]), &a), two);
        assert_eq!(eigen_jack_nonsym(&c(&[1, 0]), 0, &a), a);
        assert_eq!(eigen_jack_nonsym(&c(&[1, 0]), 1, &a), FieldElement::from_int(-1, al));
        for i in 0..4 {
            assert_eq!(eigen_jack_nonsym(&c(&[0, 0, 0, 0]), i, &a), FieldElement::from_int(-(i as i64), al));
        }
        let qt = ParamSet::of(&[Param::Q, Param::T]);
        let q = FieldElement::param(Param::Q, qt);
        let t = FieldElement::param(Param::T, qt);
        let one = FieldElement::one(qt);
        assert_eq!(eigen_macdonald_sym(&p(&[0, 0]), &q, &t), &t + &one);
        assert_eq!(eigen_macdonald_sym(&p(&[1, 0]), &q, &t), &(&q * &t) + &one);
        assert_eq!(eigen_macdonald_nonsym(&c(&[1, 0]), 0, &q, &t), q);
    }

    #[test]
    fn enumerations() {
        assert_eq!(partitions_of(4, 2).len(), 3);
        assert_eq!(dominated_partitions(&p(&[2, 1, 0])).len(), 2);
        assert_eq!(rearrangements(&p(&[2, 1, 0])).len(), 6);
        assert_eq!(sub_partitions(&p(&[2, 1])).len(), 5);
    }
}
