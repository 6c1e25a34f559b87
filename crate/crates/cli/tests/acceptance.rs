//! The acceptance gate: runs every verification criterion at its stated
//! tolerance (all checks are exact) and prints one pass/fail line each.

use motivic_cli::verify::{run_all, Budget, Catalog};
use motivic_core::catalog::GroupClassEntry;
use motivic_core::motclass::MotClass;
use motivic_core::poly::QPolynomial;

#[test]
fn acceptance_suite_full() {
    let catalog = Catalog::builtin();
    let results = run_all(10, Budget::Full, &catalog);
    for r in &results {
        println!("{}", r.line());
    }
    let failed: Vec<u32> = results.iter().filter(|r| !r.passed).map(|r| r.id).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
    assert_eq!(results.len(), 10);
}

#[test]
fn acceptance_suite_small_budget() {
    let catalog = Catalog::builtin();
    let results = run_all(10, Budget::Small, &catalog);
    for r in &results {
        println!("{}", r.line());
    }
    assert!(results.iter().all(|r| r.passed));
    let c4 = results.iter().find(|r| r.id == 4).unwrap();
    assert!(
        c4.detail.contains("skipped"),
        "small budget should note the skipped GL3(F3) items: {}",
        c4.detail
    );
}

#[test]
fn tampered_catalog_fails_only_the_affected_criteria() {
    // U2 exponent off by one: q(q-1)^3 instead of q(q-1)^2
    let mut catalog = Catalog::builtin();
    let wrong = &(&QPolynomial::q_pow_minus_one(1)
        * &(&QPolynomial::q_pow_minus_one(1) * &QPolynomial::q_pow_minus_one(1)))
        * &QPolynomial::q();
    catalog.insert(GroupClassEntry {
        name: "U2".to_string(),
        rank_param: Some(2),
        class: MotClass::from_poly(wrong),
        dim: 4,
        commutator_quotient_class: MotClass::from_poly(
            &QPolynomial::q_pow_minus_one(1) * &QPolynomial::q_pow_minus_one(1),
        ),
        derived_subgroup_class: MotClass::from_poly(QPolynomial::q()),
        specialization_guard: None,
    });
    let results = run_all(10, Budget::Small, &catalog);
    for r in &results {
        println!("{}", r.line());
    }
    let failed: Vec<u32> = results.iter().filter(|r| !r.passed).map(|r| r.id).collect();
    assert_eq!(
        failed,
        vec![4, 6],
        "exactly the U2-dependent criteria must fail"
    );
}
