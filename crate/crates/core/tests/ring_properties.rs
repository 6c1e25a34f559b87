//! Property tests for the localized-ring arithmetic and its expansions.

use motivic_core::motclass::MotClass;
use motivic_core::poly::QPolynomial;
use motivic_core::{Int, Rat};
use proptest::prelude::*;

fn poly_strategy() -> impl Strategy<Value = QPolynomial> {
    proptest::collection::vec(-5i64..=5, 0..6).prop_map(|c| QPolynomial::from_int_coeffs(&c))
}

fn class_strategy() -> impl Strategy<Value = MotClass> {
    (
        poly_strategy(),
        0u32..3,
        proptest::collection::vec((1u32..4, 1u32..3), 0..3),
    )
        .prop_map(|(num, a, cyclo)| MotClass::new(num, a, cyclo))
}

proptest! {
    #[test]
    fn addition_commutes(a in class_strategy(), b in class_strategy()) {
        prop_assert_eq!(&a + &b, &b + &a);
    }

    #[test]
    fn multiplication_commutes(a in class_strategy(), b in class_strategy()) {
        prop_assert_eq!(&a * &b, &b * &a);
    }

    #[test]
    fn addition_associates(a in class_strategy(), b in class_strategy(), c in class_strategy()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
    }

    #[test]
    fn multiplication_associates(a in class_strategy(), b in class_strategy(), c in class_strategy()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn multiplication_distributes(a in class_strategy(), b in class_strategy(), c in class_strategy()) {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn additive_inverse(a in class_strategy()) {
        prop_assert!((&a + &(-&a)).is_zero());
    }

    #[test]
    fn canonicalization_is_idempotent(a in class_strategy()) {
        let rebuilt = MotClass::new(
            a.numerator().clone(),
            a.q_power(),
            a.cyclo_factors().to_vec(),
        );
        prop_assert_eq!(rebuilt.numerator(), a.numerator());
        prop_assert_eq!(rebuilt.q_power(), a.q_power());
        prop_assert_eq!(rebuilt.cyclo_factors(), a.cyclo_factors());
    }

    #[test]
    fn truncation_consistency(a in class_strategy(), n1 in 0i64..6, extra in 0i64..6) {
        let n2 = n1 + extra;
        prop_assert_eq!(a.expand(n2).truncate(n1), a.expand(n1));
    }

    #[test]
    fn dimension_is_additive(a in class_strategy(), b in class_strategy()) {
        prop_assume!(!a.is_zero() && !b.is_zero());
        let product = &a * &b;
        prop_assert_eq!(
            product.dimension().unwrap(),
            a.dimension().unwrap() + b.dimension().unwrap()
        );
    }

    #[test]
    fn evaluation_is_multiplicative(a in class_strategy(), b in class_strategy(), q0 in 2i64..6) {
        let lhs = (&a * &b).evaluate(q0, None).unwrap();
        let rhs = a.evaluate(q0, None).unwrap() * b.evaluate(q0, None).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn expansion_is_multiplicative(a in class_strategy(), b in class_strategy(), n in 0i64..6) {
        prop_assume!(!a.is_zero() && !b.is_zero());
        // expand the factors with margin covering the other side's dimension
        let margin_a = b.dimension().unwrap().max(0);
        let margin_b = a.dimension().unwrap().max(0);
        let product = (&a * &b).expand(n);
        let via_series = a.expand(n + margin_a).mul(&b.expand(n + margin_b)).truncate(n);
        prop_assert_eq!(product, via_series);
    }

    #[test]
    fn division_inverts_multiplication(a in class_strategy(), b in class_strategy()) {
        prop_assume!(!b.is_zero());
        let product = &a * &b;
        // dividing the product by b must recover a whenever division succeeds
        if let Ok(quotient) = product.div(&b) {
            prop_assert_eq!(quotient, a);
        }
    }

    #[test]
    fn e_substitution_agrees_with_evaluation(a in class_strategy(), u in 2i64..5, v in 2i64..5) {
        // the E-polynomial view evaluated at (u, v) equals the class at q = u v
        let e = a.e_substitute();
        let ru = Rat::from_integer(Int::from(u));
        let rv = Rat::from_integer(Int::from(v));
        let lhs = e.eval(&ru, &rv).unwrap();
        let rhs = a.evaluate(u * v, None).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}
