use super::*;
use crate::jackcore::{jack_symmetric, nonsymmetric, AlphaMode};
use crate::mpoly::{d1, monomial_symmetric, permutations, vandermonde, Monomial};
use crate::partlib::partitions_of;

fn qt() -> ParamSet {
    ParamSet::of(&[Param::Q, Param::T])
}

fn g() -> QtMode {
    QtMode::Generic
}

fn z(n: usize, i: usize) -> MPoly {
    MPoly::var(n, i, qt())
}

fn part(p: &[usize]) -> Partition {
    Partition::new(p, p.len()).unwrap()
}

#[test]
fn hecke_examples() {
    let t = g().t();
    assert_eq!(hecke_apply(&MPoly::one(2, qt()), 0, &t), MPoly::constant(2, t.clone()));
    // As printed, T_1 z_1 = z_2 and T_1 z_2 = t z_1 + (t - 1) z_2.
    assert_eq!(hecke_apply(&z(2, 0), 0, &t), z(2, 1));
    let tm1 = &t - &FieldElement::one(qt());
    assert_eq!(hecke_apply(&z(2, 1), 0, &t), z(2, 0).scale(&t).add(&z(2, 1).scale(&tm1)));
    let s = z(2, 0).add(&z(2, 1));
    assert_eq!(hecke_apply(&s, 0, &t), s.scale(&t));
}

fn sample(n: usize) -> MPoly {
    let mut f = MPoly::zero(n, qt());
    let exps: [&[usize]; 3] = [&[2, 0, 1], &[0, 3, 1], &[1, 1, 0]];
    for (k, e) in exps.iter().enumerate() {
        f.add_term(Monomial::from_usizes(&e[..n]), &FieldElement::from_int(k as i64 + 2, qt()));
    }
    f
}

#[test]
fn hecke_relations() {
    let t = g().t();
    let f = sample(3);
    let lhs = hecke_apply(&hecke_apply(&hecke_apply(&f, 0, &t), 1, &t), 0, &t);
    let rhs = hecke_apply(&hecke_apply(&hecke_apply(&f, 1, &t), 0, &t), 1, &t);
    assert_eq!(lhs, rhs);
    for i in 0..2 {
        let tf = hecke_apply(&f, i, &t);
        let a = hecke_apply(&tf, i, &t).sub(&tf.scale(&t));
        let quad = a.add(&tf).sub(&f.scale(&t));
        assert!(quad.is_zero());
        assert_eq!(hecke_inverse_apply(&tf, i, &t), f);
    }
}

#[test]
fn t_symmetrizer_examples() {
    let t = g().t();
    let one = MPoly::one(2, qt());
    let onet = &FieldElement::one(qt()) + &t;
    assert_eq!(t_symmetrize(&one, TSymMode::Plus, &t), MPoly::constant(2, onet.clone()));
    assert!(t_symmetrize(&one, TSymMode::Minus, &t).is_zero());
    let s = z(2, 0).mul(&z(2, 1)).add(&z(2, 0).pow(2)).add(&z(2, 1).pow(2));
    assert_eq!(t_symmetrize(&s, TSymMode::Plus, &t), s.scale(&onet));
    let f = sample(3);
    for mode in [TSymMode::Plus, TSymMode::Minus] {
        assert_eq!(t_symmetrize(&f, mode, &t), t_symmetrize_by_words(&f, mode, &t));
    }
}

#[test]
fn reduced_words_realize_permutations() {
    for (perm, _) in permutations(4) {
        let word = reduced_word(&perm);
        let mut p: Vec<usize> = (0..4).collect();
        for &i in &word {
            p = p.iter().map(|&v| if v == i { i + 1 } else if v == i + 1 { i } else { v }).collect();
        }
        assert_eq!(p, perm);
    }
}

#[test]
fn symmetric_examples() {
    assert_eq!(*macdonald_symmetric(&part(&[1, 0]), &g()).unwrap(), z(2, 0).add(&z(2, 1)));
    assert_eq!(*macdonald_symmetric(&part(&[1, 1]), &g()).unwrap(), z(2, 0).mul(&z(2, 1)));
    let (q, t) = (g().q(), g().t());
    let one = FieldElement::one(qt());
    let c = &(&(&one + &q) * &(&one - &t)) / &(&one - &(&q * &t));
    let expected = monomial_symmetric(2, &[2], qt()).add(&monomial_symmetric(2, &[1, 1], qt()).scale(&c));
    assert_eq!(*macdonald_symmetric(&part(&[2, 0]), &g()).unwrap(), expected);
}

#[test]
fn symmetric_is_m1_eigenfunction() {
    let (q, t) = (g().q(), g().t());
    for k in [part(&[2, 1, 0]), part(&[3, 1, 0]), part(&[2, 2, 0])] {
        let p = macdonald_symmetric(&k, &g()).unwrap();
        let e = crate::partlib::eigen_macdonald_sym(&k, &q, &t);
        assert_eq!(m1_apply(&p, &q, &t), p.scale(&e), "{:?}", k);
    }
}

fn schur(kappa: &Partition, field: ParamSet) -> MPoly {
    let n = kappa.n();
    let mut num = MPoly::zero(n, field);
    for (perm, sign) in permutations(n) {
        let e: Vec<usize> = (0..n).map(|i| kappa.parts()[perm[i]] + n - 1 - perm[i]).collect();
        num.add_term(Monomial::from_usizes(&e), &FieldElement::from_int(sign as i64, field));
    }
    num.exact_divide(&vandermonde(n, field)).unwrap()
}

#[test]
fn q_equals_t_gives_schur() {
    let mode = QtMode::p_power(1, 1);
    for n in 1..=3 {
        for m in 0..=4 {
            for k in partitions_of(m, n) {
                let p = macdonald_symmetric(&k, &mode).unwrap();
                assert_eq!(*p, schur(&k, mode.field()), "{:?}", k);
            }
        }
    }
}

#[test]
fn jack_limit_examples() {
    let (q, t) = (g().q(), g().t());
    let one = FieldElement::one(qt());
    let c = &(&(&one + &q) * &(&one - &t)) / &(&one - &(&q * &t));
    let al = ParamSet::single(Param::Alpha);
    let alpha = FieldElement::param(Param::Alpha, al);
    let expected = FieldElement::from_int(2, al).checked_div(&(&FieldElement::one(al) + &alpha)).unwrap();
    assert_eq!(jack_limit_coeff(&c).unwrap(), expected);
    assert_eq!(jack_limit_coeff(&FieldElement::from_int(7, qt())).unwrap(), FieldElement::from_int(7, al));
    let r = &(&one - &q) / &(&one - &q);
    assert!(jack_limit_coeff(&r).unwrap().is_one());
    assert!(jack_limit_coeff(&(&one / &(&one - &q))).is_err());
}

#[test]
fn jack_limit_of_symmetric() {
    for k in [part(&[2, 1, 0]), part(&[3, 1, 0]), part(&[2, 2, 1])] {
        let p = macdonald_symmetric(&k, &g()).unwrap();
        let j = jack_symmetric(&k, &AlphaMode::Generic).unwrap();
        assert_eq!(jack_limit(&p).unwrap(), j.poly, "{:?}", k);
    }
}

#[test]
fn nonsymmetric_examples() {
    assert_eq!(*macdonald_nonsymmetric(&[0, 0, 0], &g()).unwrap(), MPoly::one(3, qt()));
    assert_eq!(*macdonald_nonsymmetric(&[0, 1], &g()).unwrap(), z(2, 1));
    let e10 = macdonald_nonsymmetric(&[1, 0], &g()).unwrap();
    assert_eq!(e10.coeff_of(&[1, 0]), FieldElement::one(qt()));
    let lim = jack_limit(&e10).unwrap();
    assert_eq!(lim, nonsymmetric(&[1, 0], &AlphaMode::Generic).unwrap().poly);
}

#[test]
fn nonsymmetric_jack_limit_and_me_proportionality() {
    let t = g().t();
    for eta in [vec![0, 1, 2], vec![2, 0, 1], vec![1, 0, 1], vec![0, 2, 0]] {
        let e = macdonald_nonsymmetric(&eta, &g()).unwrap();
        assert_eq!(jack_limit(&e).unwrap(), nonsymmetric(&eta, &AlphaMode::Generic).unwrap().poly, "{:?}", eta);
        let mut plus = eta.clone();
        plus.sort_unstable_by(|a, b| b.cmp(a));
        let p = macdonald_symmetric(&part(&plus), &g()).unwrap();
        let u = t_symmetrize(&e, TSymMode::Plus, &t);
        let (m, c) = p.leading().unwrap();
        let ratio = u.coeff(m).checked_div(c).unwrap();
        assert!(!ratio.is_zero());
        assert_eq!(u, p.scale(&ratio));
    }
}

#[test]
fn antisymmetric_examples() {
    let t = g().t();
    let tinv = t.inv().unwrap();
    let base = z(2, 0).scale(&t).sub(&z(2, 1)).scale(&tinv);
    assert_eq!(*macdonald_antisymmetric(&part(&[0, 0]), &g()).unwrap(), base);
    assert_eq!(*macdonald_antisymmetric(&part(&[1, 0]), &g()).unwrap(), base.mul(&z(2, 0).add(&z(2, 1))));
    // q -> 1 with t = q^{1/alpha} gives the antisymmetric Jack polynomial.
    let s = macdonald_antisymmetric(&part(&[1, 0, 0]), &g()).unwrap();
    let j = crate::jackcore::jack_antisymmetric(&part(&[1, 0, 0]), &AlphaMode::Generic).unwrap();
    assert_eq!(jack_limit(&s).unwrap(), j.poly);
}

#[test]
fn antisymmetric_matches_u_minus() {
    let t = g().t();
    let k = part(&[1, 0, 0]);
    let s = macdonald_antisymmetric(&k, &g()).unwrap();
    let rho: Vec<usize> = k.add(&Partition::delta(3)).parts().iter().rev().cloned().collect();
    let e = macdonald_nonsymmetric(&rho, &g()).unwrap();
    let u = t_symmetrize(&e, TSymMode::Minus, &t);
    let (m, c) = s.leading().unwrap();
    let ratio = u.coeff(m).checked_div(c).unwrap();
    assert!(!ratio.is_zero());
    assert_eq!(u, s.scale(&ratio));
}

#[test]
fn wheel_examples() {
    // D_1(z; q^{1/2}) with q = p^2 vanishes on the r = 2 wheel.
    let mode = QtMode::p_exact(2, -1);
    let d = d1(2, &mode.p());
    let fam = wheel_family_k1(2, 2, false);
    assert_eq!(fam.len(), 4);
    assert!(wheel_check(&d, &fam).holds());
    let p20 = macdonald_symmetric(&part(&[2, 0]), &mode).unwrap();
    assert!(wheel_check(&p20, &fam).holds());
    let f = monomial_symmetric(2, &[2], mode.field()).add(&monomial_symmetric(2, &[1, 1], mode.field()));
    let rep = wheel_check(&f, &fam);
    assert!(!rep.holds());
    assert!(!rep.first_failure().unwrap().residual.is_zero());
}

#[test]
fn pole_discipline() {
    // q = t = 1 direction: P_(2,0) has (1-qt) in a denominator; q = p, t = p^{-1}.
    let mode = QtMode::p_exact(1, -1);
    assert!(matches!(macdonald_symmetric(&part(&[2, 0]), &mode), Err(MacError::Pole { .. })));
}

#[test]
fn specialization_consistency() {
    let mode = QtMode::p_exact(2, 3);
    for k in [part(&[2, 1, 0]), part(&[3, 1, 1])] {
        let g = macdonald_symmetric(&k, &g()).unwrap();
        let direct = macdonald_symmetric(&k, &mode).unwrap();
        assert_eq!(g.specialize(&[(Param::Q, mode.q()), (Param::T, mode.t())]).unwrap(), *direct);
    }
}

#[test]
fn lqt_annihilates_constants_only() {
    let (q, t) = (g().q(), g().t());
    assert!(lqt_apply(&MPoly::one(3, qt()), &q, &t).is_zero());
    assert!(!lqt_apply(&z(3, 0).add(&z(3, 1)).add(&z(3, 2)), &q, &t).is_zero());
}
