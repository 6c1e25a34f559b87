//! Representation-stability dichotomy on random classes: the free-power
//! quotient sequence converges exactly when the class is monic, for every
//! small padded partition.

use motivic_core::partition::Partition;
use motivic_core::poly::QPolynomial;
use motivic_core::repstab::{free_power_limit, rep_stability_check};
use proptest::prelude::*;

fn small_partition() -> impl Strategy<Value = Partition> {
    prop_oneof![
        Just(Partition::empty()),
        Just(Partition::new(vec![1])),
        Just(Partition::new(vec![2])),
        Just(Partition::new(vec![1, 1])),
        Just(Partition::new(vec![3])),
        Just(Partition::new(vec![2, 1])),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn stability_iff_monic(
        lower in proptest::collection::vec(-3i64..=3, 1..4),
        lead in 1i64..3,
        lambda in small_partition(),
    ) {
        let mut coeffs = lower;
        coeffs.push(lead);
        let x = QPolynomial::from_int_coeffs(&coeffs);
        let report = rep_stability_check(&x, &lambda, 6).unwrap();
        prop_assert_eq!(report.converged, x.is_monic(), "x = {}, lambda = {}", x, lambda);
        if x.is_monic() {
            let closed = free_power_limit(&x, &lambda).unwrap();
            prop_assert_eq!(report.limit.unwrap(), closed.expand(6));
        }
    }
}
