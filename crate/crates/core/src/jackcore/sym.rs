use std::collections::BTreeMap;

use crate::exactnum::{FieldElement, ParamSet};
use crate::mpoly::{monomial_symmetric, MPoly};
use crate::partlib::Partition;

/// A symmetric polynomial in the monomial symmetric basis m_mu.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymPoly {
    pub n: usize,
    pub field: ParamSet,
    pub coeffs: BTreeMap<Partition, FieldElement>,
}

impl SymPoly {
    pub fn zero(n: usize, field: ParamSet) -> SymPoly {
        SymPoly { n, field, coeffs: BTreeMap::new() }
    }

    pub fn add_term(&mut self, mu: Partition, c: &FieldElement) {
        if c.is_zero() {
            return;
        }
        self.field = self.field.union(c.vars());
        match self.coeffs.entry(mu) {
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

    pub fn coeff(&self, mu: &Partition) -> FieldElement {
        self.coeffs.get(mu).cloned().unwrap_or_else(|| FieldElement::zero(self.field))
    }

    /// Reads off the m-basis coefficients of a symmetric polynomial. The
    /// caller is responsible for symmetry (see [`crate::mpoly::is_symmetric`]).
    pub fn from_mpoly(f: &MPoly) -> SymPoly {
        let mut s = SymPoly::zero(f.nvars(), f.field());
        for (m, c) in f.terms() {
            if m.0.windows(2).all(|w| w[0] >= w[1]) {
                let parts: Vec<usize> = m.0.iter().map(|&x| x as usize).collect();
                s.coeffs.insert(Partition::new(&parts, f.nvars()).unwrap(), c.clone());
            }
        }
        s
    }

    pub fn to_mpoly(&self) -> MPoly {
        let mut out = MPoly::zero(self.n, self.field);
        for (mu, c) in &self.coeffs {
            let m = monomial_symmetric(self.n, mu.parts(), self.field);
            for (mono, _) in m.terms() {
                out.add_term(mono.clone(), c);
            }
        }
        out
    }

    pub fn scale(&self, c: &FieldElement) -> SymPoly {
        let mut s = SymPoly::zero(self.n, self.field.union(c.vars()));
        for (mu, x) in &self.coeffs {
            s.add_term(mu.clone(), &(x * c));
        }
        s
    }

    pub fn specialize(&self, bindings: &[(crate::exactnum::Param, FieldElement)]) -> Result<SymPoly, crate::exactnum::ExactError> {
        let mut field = self.field;
        for (p, _) in bindings {
            field = field.without(*p);
        }
        for (_, v) in bindings {
            field = field.union(v.vars());
        }
        let mut s = SymPoly::zero(self.n, field);
        for (mu, c) in &self.coeffs {
            let v = c.specialize(bindings)?;
            if !v.is_zero() {
                s.coeffs.insert(mu.clone(), v);
            }
        }
        Ok(s)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// One line `[parts] : c` per nonzero coefficient.
    pub fn to_text(&self) -> String {
        let mut s = format!("sympoly nvars={}\n", self.n);
        for (mu, c) in &self.coeffs {
            s.push_str(&format!("{:?} : {}\n", mu.parts(), crate::exactnum::text::field_to_text(c)));
        }
        s
    }

    /// Adds c to the coefficient of the partition with the given (unsorted) parts.
    fn bump(&mut self, mut parts: Vec<usize>, c: &FieldElement) {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        self.add_term(Partition::new(&parts, self.n).unwrap(), c);
    }

    /// sum_j d/dz_j, using d m_mu = sum over part values v > 0 of
    /// v * mult_nu(v-1) m_nu, nu = mu with one v lowered to v-1.
    pub fn highest_weight(&self) -> SymPoly {
        let mut out = SymPoly::zero(self.n, self.field);
        for (mu, c) in &self.coeffs {
            for v in distinct_values(mu.parts()).into_iter().filter(|&v| v > 0) {
                let mut nu = mu.parts().to_vec();
                let i = nu.iter().position(|&x| x == v).unwrap();
                nu[i] = v - 1;
                let mult = nu.iter().filter(|&&x| x == v - 1).count();
                self.with_factor(&mut out, nu, c, (v * mult) as i64);
            }
        }
        out
    }

    /// sum_j z_j^2 d/dz_j - n_phi sum_j z_j.
    pub fn lowest_weight(&self, n_phi: i64) -> SymPoly {
        let mut out = SymPoly::zero(self.n, self.field);
        for (mu, c) in &self.coeffs {
            for v in distinct_values(mu.parts()) {
                let mut nu = mu.parts().to_vec();
                let i = nu.iter().position(|&x| x == v).unwrap();
                nu[i] = v + 1;
                let mult = nu.iter().filter(|&&x| x == v + 1).count() as i64;
                self.with_factor(&mut out, nu, c, (v as i64 - n_phi) * mult);
            }
        }
        out
    }

    /// sum_j z_j^2 d^2/dz_j^2 + n_phi sum_j z_j.
    pub fn lowest_weight_printed(&self, n_phi: i64) -> SymPoly {
        let mut out = SymPoly::zero(self.n, self.field);
        for (mu, c) in &self.coeffs {
            let diag: usize = mu.parts().iter().map(|&a| a * a.saturating_sub(1)).sum();
            self.with_factor(&mut out, mu.parts().to_vec(), c, diag as i64);
            for v in distinct_values(mu.parts()) {
                let mut nu = mu.parts().to_vec();
                let i = nu.iter().position(|&x| x == v).unwrap();
                nu[i] = v + 1;
                let mult = nu.iter().filter(|&&x| x == v + 1).count() as i64;
                self.with_factor(&mut out, nu, c, n_phi * mult);
            }
        }
        out
    }

    fn with_factor(&self, out: &mut SymPoly, parts: Vec<usize>, c: &FieldElement, k: i64) {
        if k != 0 {
            out.bump(parts, &(c * &FieldElement::from_int(k, self.field)));
        }
    }

    /// Leading partition in the fixed total order.
    pub fn leading(&self) -> Option<(&Partition, &FieldElement)> {
        self.coeffs.iter().next_back()
    }

    /// Value at z = (1, ..., 1): sum over mu of c_mu times the orbit size of mu.
    pub fn eval_ones(&self) -> FieldElement {
        let mut total = FieldElement::zero(self.field);
        for (mu, c) in &self.coeffs {
            total += &(c * &FieldElement::from_int(orbit_size(mu) as i64, self.field));
        }
        total
    }
}

fn distinct_values(parts: &[usize]) -> Vec<usize> {
    let mut v = parts.to_vec();
    v.dedup();
    v
}

/// Number of distinct rearrangements of a partition (multinomial coefficient).
pub fn orbit_size(mu: &Partition) -> u64 {
    let n = mu.n() as u64;
    let mut num: u64 = 1;
    for i in 2..=n {
        num *= i;
    }
    num / stabilizer_size(mu.parts())
}

/// Product of factorials of the multiplicities of the entries.
pub fn stabilizer_size(e: &[usize]) -> u64 {
    let mut sorted = e.to_vec();
    sorted.sort_unstable();
    let mut stab: u64 = 1;
    let mut run = 1u64;
    for w in sorted.windows(2) {
        if w[0] == w[1] {
            run += 1;
            stab *= run;
        } else {
            run = 1;
        }
    }
    stab
}
