//! Sparse multivariate polynomials in z_1..z_N and the operators acting on them.

mod ops;
mod poly;
mod special;

pub use ops::{
    apply_operator, distinct_rearrangements, divided_difference, divided_difference_by_division, is_symmetric,
    monomial_symmetric, perm_sign, permutations, substitute, symmetrize, symmetrize_explicit, OperatorTag, Subst,
    SubstPlan, SymMode,
};
pub use poly::{MPoly, Monomial, PolyError};
pub use special::{d1, d_l, group_vandermonde, pfaffian_product, t_vandermonde, vandermonde};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{FieldElement, Param, ParamSet};

    const E: ParamSet = ParamSet::EMPTY;

    fn z(n: usize, i: usize) -> MPoly {
        MPoly::var(n, i, E)
    }

    fn k(n: usize, c: i64) -> MPoly {
        MPoly::constant(n, FieldElement::from_int(c, E))
    }

    #[test]
    fn arithmetic_examples() {
        let (z1, z2) = (z(2, 0), z(2, 1));
        let lhs = z1.add(&z2).mul(&z1.sub(&z2));
        assert_eq!(lhs, z1.mul(&z1).sub(&z2.mul(&z2)));
        assert_eq!(lhs.add(&MPoly::zero(2, E)), lhs);
        let m1 = monomial_symmetric(2, &[1], E);
        let expected = monomial_symmetric(2, &[2], E).add(&monomial_symmetric(2, &[1, 1], E).scale(&FieldElement::from_int(2, E)));
        assert_eq!(m1.mul(&m1), expected);
    }

    #[test]
    fn division_examples() {
        let (z1, z2) = (z(2, 0), z(2, 1));
        let f = z1.mul(&z1).sub(&z2.mul(&z2));
        assert_eq!(f.exact_divide(&z1.sub(&z2)).unwrap(), z1.add(&z2));
        let err = f.exact_divide(&z1.add(&z2.scale(&FieldElement::from_int(2, E)))).unwrap_err();
        assert!(!err.remainder().unwrap().is_zero());
        let d = vandermonde(3, E);
        assert_eq!(d.mul(&d).exact_divide(&d).unwrap(), d);
    }

    #[test]
    fn substitution_examples() {
        let f = z(3, 0).mul(&z(3, 1)).add(&z(3, 2).pow(2));
        let g = substitute(&f, &SubstPlan::coalesce(3, &[1, 2], E));
        assert_eq!(g.nvars(), 2);
        assert_eq!(g, z(2, 0).mul(&z(2, 1)).add(&z(2, 1).pow(2)));
        let d = vandermonde(2, E);
        let mut plan = SubstPlan::identity(2, E);
        plan.set(1, Subst::Var { target: 0, scale: FieldElement::one(E) });
        assert!(substitute(&d, &plan).is_zero());
    }

    #[test]
    fn operator_examples() {
        let z1 = z(2, 0);
        let z2 = z(2, 1);
        assert_eq!(apply_operator(&z1.pow(2), &OperatorTag::DividedDiff(0, 1)), z1.add(&z2));
        let qs = ParamSet::single(Param::Q);
        let q = FieldElement::param(Param::Q, qs);
        let f = z1.mul(&z2);
        assert_eq!(apply_operator(&f, &OperatorTag::QShift(0, q.clone())), f.scale(&q));
        let g = z1.pow(2).mul(&z2);
        assert_eq!(apply_operator(&g, &OperatorTag::Reflect(0)), g);
        assert_eq!(apply_operator(&f, &OperatorTag::Reflect(0)), f.neg());
    }

    #[test]
    fn divided_difference_matches_division() {
        let n = 3;
        let f = z(n, 0).pow(3).mul(&z(n, 2)).add(&z(n, 1).pow(2).scale(&FieldElement::from_int(5, E))).add(&k(n, 7));
        for (i, j) in [(0, 1), (0, 2), (1, 2), (2, 0)] {
            assert_eq!(divided_difference(&f, i, j), divided_difference_by_division(&f, i, j));
        }
    }

    #[test]
    fn symmetrize_examples() {
        let z1 = z(2, 0);
        let sym = symmetrize(&z1.pow(2), SymMode::Sym);
        assert_eq!(sym, z1.pow(2).add(&z(2, 1).pow(2)));
        assert_eq!(symmetrize(&z1, SymMode::Asym), z1.sub(&z(2, 1)));
        assert!(symmetrize(&z1.pow(2).mul(&z(2, 1).pow(2)), SymMode::Asym).is_zero());
        let f = z(3, 0).pow(2).mul(&z(3, 1)).add(&z(3, 2).scale(&FieldElement::from_int(3, E)));
        for mode in [SymMode::Sym, SymMode::Asym] {
            assert_eq!(symmetrize(&f, mode), symmetrize_explicit(&f, mode));
        }
    }

    #[test]
    fn special_product_examples() {
        let (z1, z2) = (z(2, 0), z(2, 1));
        assert_eq!(vandermonde(2, E), z1.sub(&z2));
        let ts = ParamSet::single(Param::T);
        let t = FieldElement::param(Param::T, ts);
        assert_eq!(t_vandermonde(2, &t), z1.scale(&t).sub(&z2));
        let qs = ParamSet::single(Param::Q);
        let q = FieldElement::param(Param::Q, qs);
        assert_eq!(d1(2, &q), z2.scale(&q).sub(&z1).mul(&z1.scale(&q).sub(&z2)));
    }

    #[test]
    fn pfaffian_examples() {
        assert_eq!(pfaffian_product(2, E).unwrap(), k(2, 1));
        assert!(pfaffian_product(3, E).is_err());
        // n = 4: sum over the three matchings, each term Delta / (pair product).
        let n = 4;
        let d = |i: usize, j: usize| z(n, i).sub(&z(n, j));
        let delta = vandermonde(n, E);
        let terms = [((0, 1), (2, 3), 1), ((0, 2), (1, 3), -1), ((0, 3), (1, 2), 1)];
        let mut expected = MPoly::zero(n, E);
        for ((a, b), (c, e), s) in terms {
            let q = delta.exact_divide(&d(a, b).mul(&d(c, e))).unwrap();
            expected = expected.add(&q.scale(&FieldElement::from_int(s, E)));
        }
        let pf = pfaffian_product(n, E).unwrap();
        assert_eq!(pf, expected);
        assert_eq!(pf.degree(), Some(4));
    }

    #[test]
    fn text_round_trip() {
        let qt = ParamSet::of(&[Param::Q, Param::T]);
        let q = FieldElement::param(Param::Q, qt);
        let t = FieldElement::param(Param::T, qt);
        let one = FieldElement::one(qt);
        let c = (&one + &q) * (&one - &t) / (&one - &(&q * &t));
        let f = monomial_symmetric(2, &[2], qt).add(&monomial_symmetric(2, &[1, 1], qt).scale(&c));
        let s = f.to_text();
        assert_eq!(MPoly::from_text(&s).unwrap(), f);
        assert!(MPoly::from_text(&s[..s.len() - 3]).is_err());
    }
}
