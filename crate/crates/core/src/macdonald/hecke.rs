//! Hecke operators T_i, their inverses, omega, the Cherednik operators Y_i
//! and the t-(anti)symmetrizers. Indices are 0-based: `hecke_apply(f, i, t)`
//! is T_{i+1} acting on z_{i+1}, z_{i+2}.

use std::collections::HashMap;

use crate::exactnum::FieldElement;
use crate::mpoly::{divided_difference, MPoly, Monomial};

/// T_i f = t f + (t z_i - z_{i+1}) (s_i f - f)/(z_i - z_{i+1}).
pub fn hecke_apply(f: &MPoly, i: usize, t: &FieldElement) -> MPoly {
    let n = f.nvars();
    assert!(i + 1 < n, "T_i needs i + 1 < N");
    let field = f.field().union(t.vars());
    let f = f.with_field(field);
    // (s_i f - f)/(z_i - z_{i+1}) = -DD(f)
    let dd = divided_difference(&f, i, i + 1);
    let lin = MPoly::var(n, i, field).scale(t).sub(&MPoly::var(n, i + 1, field));
    f.scale(t).sub(&lin.mul(&dd))
}

/// T_i^{-1} = (T_i - t + 1)/t, from (T_i - t)(T_i + 1) = 0.
pub fn hecke_inverse_apply(f: &MPoly, i: usize, t: &FieldElement) -> MPoly {
    let field = f.field().union(t.vars());
    let one = FieldElement::one(field);
    let tf = hecke_apply(f, i, t);
    let shifted = tf.sub(&f.scale(&(t - &one)));
    shifted.scale(&t.inv().expect("t != 0"))
}

/// omega f(z_1, ..., z_N) = f(q z_N, z_1, ..., z_{N-1}).
pub fn omega_apply(f: &MPoly, q: &FieldElement) -> MPoly {
    let n = f.nvars();
    let field = f.field().union(q.vars());
    let mut pows: HashMap<u16, FieldElement> = HashMap::new();
    let mut out = MPoly::zero(n, field);
    for (m, c) in f.terms() {
        let mut e = Monomial::zero(n);
        for j in 0..n - 1 {
            e.0[j] = m.0[j + 1];
        }
        e.0[n - 1] = m.0[0];
        let qp = pows.entry(m.0[0]).or_insert_with(|| q.pow(m.0[0] as i64).unwrap());
        out.add_term(e, &(c * &*qp));
    }
    out
}

/// Y_i = t^{-N+i} T_i ... T_{N-1} omega T_1^{-1} ... T_{i-1}^{-1} (1-based i in
/// this formula; `i` below is 0-based).
pub fn y_apply(f: &MPoly, i: usize, q: &FieldElement, t: &FieldElement) -> MPoly {
    let n = f.nvars();
    let mut g = f.clone();
    for j in (0..i).rev() {
        g = hecke_inverse_apply(&g, j, t);
    }
    g = omega_apply(&g, q);
    for j in (i..n - 1).rev() {
        g = hecke_apply(&g, j, t);
    }
    let power = -(n as i64) + (i as i64 + 1);
    g.scale(&t.pow(power).unwrap())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TSymMode {
    Plus,
    Minus,
}

/// Applies T_{w_l} ... T_{w_1} for the word (w_1, ..., w_l).
pub fn hecke_word_apply(f: &MPoly, word: &[usize], t: &FieldElement) -> MPoly {
    let mut g = f.clone();
    for &i in word {
        g = hecke_apply(&g, i, t);
    }
    g
}

fn inversions(p: &[usize]) -> usize {
    let mut c = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                c += 1;
            }
        }
    }
    c
}

/// U+ = sum_sigma T_sigma and U- = sum_sigma (-1/t)^{l(sigma)} T_sigma.
///
/// Permutations are generated breadth first by length; each new sigma' =
/// s_i sigma with l(sigma') = l(sigma) + 1 gets T_sigma' f = T_i T_sigma f,
/// which is a reduced word by construction.
pub fn t_symmetrize(f: &MPoly, mode: TSymMode, t: &FieldElement) -> MPoly {
    let n = f.nvars();
    let field = f.field().union(t.vars());
    let minus_inv_t = -t.inv().expect("t != 0");
    let mut out = f.with_field(field);
    let mut layer: HashMap<Vec<usize>, MPoly> = HashMap::new();
    layer.insert((0..n).collect(), f.with_field(field));
    let mut length = 0i64;
    while !layer.is_empty() {
        length += 1;
        let mut next: HashMap<Vec<usize>, MPoly> = HashMap::new();
        let mut keys: Vec<&Vec<usize>> = layer.keys().collect();
        keys.sort();
        for sigma in keys {
            let g = &layer[sigma];
            for i in 0..n.saturating_sub(1) {
                // left multiplication by s_i swaps the values i and i+1
                let tau: Vec<usize> = sigma.iter().map(|&v| if v == i { i + 1 } else if v == i + 1 { i } else { v }).collect();
                if inversions(&tau) as i64 != length || next.contains_key(&tau) {
                    continue;
                }
                next.insert(tau, hecke_apply(g, i, t));
            }
        }
        let weight = match mode {
            TSymMode::Plus => FieldElement::one(field),
            TSymMode::Minus => minus_inv_t.pow(length).unwrap(),
        };
        for g in next.values() {
            out = out.add(&g.scale(&weight));
        }
        layer = next;
    }
    out
}

/// Explicit reduced word for every permutation (bubble-sort decomposition),
/// used to check that U+- does not depend on the choice of reduced words.
pub fn reduced_word(sigma: &[usize]) -> Vec<usize> {
    // sigma = s_{w_l} ... s_{w_1}; peel off left factors by sorting values.
    let mut p = sigma.to_vec();
    let mut left: Vec<usize> = Vec::new();
    loop {
        let mut moved = false;
        for i in 0..p.len().saturating_sub(1) {
            let pos_i = p.iter().position(|&v| v == i).unwrap();
            let pos_j = p.iter().position(|&v| v == i + 1).unwrap();
            if pos_i > pos_j {
                p.swap(pos_i, pos_j);
                left.push(i);
                moved = true;
            }
        }
        if !moved {
            break;
        }
    }
    // sigma = s_{left[0]} s_{left[1]} ... applied as value swaps from the left,
    // so the word read right to left is `left` reversed.
    left.reverse();
    left
}

/// U+- using `reduced_word` for each permutation.
pub fn t_symmetrize_by_words(f: &MPoly, mode: TSymMode, t: &FieldElement) -> MPoly {
    let n = f.nvars();
    let field = f.field().union(t.vars());
    let minus_inv_t = -t.inv().expect("t != 0");
    let mut out = MPoly::zero(n, field);
    for (perm, _) in crate::mpoly::permutations(n) {
        let word = reduced_word(&perm);
        let g = hecke_word_apply(f, &word, t);
        let w = match mode {
            TSymMode::Plus => FieldElement::one(field),
            TSymMode::Minus => minus_inv_t.pow(word.len() as i64).unwrap(),
        };
        out = out.add(&g.scale(&w));
    }
    out
}
