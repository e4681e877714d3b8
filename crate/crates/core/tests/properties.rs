use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use lck_core::catalog::{get, sl2_algebra, su2_algebra};
use lck_core::exterior::{basis_tuples, KForm};
use lck_core::lie::LieAlgebra;
use lck_core::scalars::gcd::gcd;
use lck_core::scalars::{Monomial, Params, Poly, Scalar};

fn poly_strategy() -> impl Strategy<Value = Poly> {
    prop::collection::vec((0u32..3, 0u32..3, -4i64..=4), 0..4).prop_map(|terms| {
        Poly::from_terms(terms.into_iter().map(|(i, j, c)| {
            (
                Monomial::from_exponents(vec![i, j]),
                BigRational::from_integer(BigInt::from(c)),
            )
        }))
    })
}

fn nonzero_poly() -> impl Strategy<Value = Poly> {
    poly_strategy().prop_filter("nonzero", |p| !p.is_zero())
}

fn scalar_strategy() -> impl Strategy<Value = Scalar> {
    (poly_strategy(), nonzero_poly()).prop_map(|(n, d)| Scalar::new(n, d).unwrap())
}

fn algebras() -> Vec<LieAlgebra> {
    let mut heis = LieAlgebra::new(["x", "y", "z", "w"], Params::empty());
    heis.set_bracket_ints(0, 1, &[0, 0, 1, 0]);
    let mut solvable = LieAlgebra::new(["a", "b", "c", "d"], Params::empty());
    solvable.set_bracket_ints(0, 1, &[0, 1, 0, 0]);
    solvable.set_bracket_ints(0, 2, &[0, 1, 2, 0]);
    solvable.set_bracket_ints(0, 3, &[0, 0, 0, -3]);
    vec![
        get("u2").unwrap().algebra,
        get("gl2r").unwrap().algebra,
        LieAlgebra::abelian(4),
        heis,
        solvable,
        su2_algebra(Params::empty()).direct_sum(&LieAlgebra::abelian(1)),
        sl2_algebra(Params::empty()).direct_sum(&LieAlgebra::abelian(1)),
    ]
}

fn form_strategy(degree: usize) -> impl Strategy<Value = KForm> {
    let len = basis_tuples(4, degree).len();
    prop::collection::vec(-3i64..=3, len).prop_map(move |cs| {
        let coords: Vec<Scalar> = cs.into_iter().map(Scalar::from_int).collect();
        KForm::from_coords(4, degree, &coords)
    })
}

fn vector_strategy() -> impl Strategy<Value = Vec<Scalar>> {
    prop::collection::vec(-3i64..=3, 4)
        .prop_map(|cs| cs.into_iter().map(Scalar::from_int).collect())
}

fn algebra_index() -> impl Strategy<Value = usize> {
    0..algebras().len()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn addition_is_associative_and_commutative(
        a in scalar_strategy(), b in scalar_strategy(), c in scalar_strategy()
    ) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn multiplication_distributes(
        a in scalar_strategy(), b in scalar_strategy(), c in scalar_strategy()
    ) {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn nonzero_scalars_are_invertible(a in scalar_strategy()) {
        prop_assume!(!a.is_zero());
        let inv = a.inv().unwrap();
        prop_assert!((&a * &inv).is_one());
        prop_assert_eq!(a.checked_div(&a).unwrap(), Scalar::one());
    }

    #[test]
    fn gcd_divides_and_keeps_common_factor(
        a in nonzero_poly(), b in nonzero_poly(), c in nonzero_poly()
    ) {
        let ac = &a * &c;
        let bc = &b * &c;
        let g = gcd(&ac, &bc);
        prop_assert!(ac.div_exact(&g).is_some());
        prop_assert!(bc.div_exact(&g).is_some());
        prop_assert!(g.div_exact(&c).is_some());
    }

    #[test]
    fn d_squared_vanishes(idx in algebra_index(), k in 0usize..3, seed in any::<u64>()) {
        let g = &algebras()[idx];
        let alpha = sample_form(k, seed);
        prop_assert!(alpha.d(g).d(g).is_zero());
    }

    #[test]
    fn twisted_d_squared_vanishes_for_closed_lambda(
        k in 0usize..3, seed in any::<u64>(), c in -3i64..=3
    ) {
        for g in algebras().iter().take(2) {
            let lambda = KForm::basis_1form(4, 0).scale(&Scalar::from_int(c));
            prop_assert!(lambda.d(g).is_zero());
            let alpha = sample_form(k, seed);
            prop_assert!(alpha.twisted_d(g, &lambda).twisted_d(g, &lambda).is_zero());
        }
    }

    #[test]
    fn leibniz_rule(
        idx in algebra_index(), a in form_strategy(1), b in form_strategy(2)
    ) {
        let g = &algebras()[idx];
        let lhs = a.wedge(&b).d(g);
        let rhs = &a.d(g).wedge(&b) - &a.wedge(&b.d(g));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn interior_twice_vanishes(alpha in form_strategy(2), v in vector_strategy()) {
        let once = alpha.interior(&v).unwrap();
        prop_assert!(once.interior(&v).unwrap().is_zero());
    }

    #[test]
    fn lie_derivative_commutes_with_d(
        idx in algebra_index(), alpha in form_strategy(2), v in vector_strategy()
    ) {
        let g = &algebras()[idx];
        let cartan = &alpha.interior(&v).unwrap().d(g) + &alpha.d(g).interior(&v).unwrap();
        prop_assert_eq!(alpha.lie_derivative(g, &v), cartan);
        prop_assert_eq!(alpha.lie_derivative(g, &v).d(g), alpha.d(g).lie_derivative(g, &v));
    }

    #[test]
    fn lie_derivative_is_a_representation(
        idx in algebra_index(), alpha in form_strategy(2),
        x in vector_strategy(), y in vector_strategy()
    ) {
        let g = &algebras()[idx];
        let lxy = &alpha.lie_derivative(g, &y).lie_derivative(g, &x)
            - &alpha.lie_derivative(g, &x).lie_derivative(g, &y);
        prop_assert_eq!(alpha.lie_derivative(g, &g.bracket(&x, &y)), lxy);
    }
}

fn sample_form(k: usize, seed: u64) -> KForm {
    let len = basis_tuples(4, k).len();
    let coords: Vec<Scalar> = (0..len)
        .map(|i| Scalar::from_int(((seed >> (3 * i)) & 7) as i64 - 3))
        .collect();
    KForm::from_coords(4, k, &coords)
}

#[test]
fn test_algebras_satisfy_jacobi() {
    for g in algebras() {
        assert!(g.check_jacobi().is_ok(), "{g}");
    }
}
