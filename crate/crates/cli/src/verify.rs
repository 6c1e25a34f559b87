//! The full verification suite: every check the engine promises, run end to
//! end against the counting oracle, one pass/fail line per criterion.

use std::collections::BTreeMap;

use motivic_core::catalog::{
    builtin_entries, rep_surface_class, verify_conjecture_a_with, GroupClassEntry,
};
use motivic_core::commuting::{
    c2_glr_class, census_glr, gl2_branching_system, gl2_closed_form, gl2_strata,
    rank_stability_report, sl2_commuting_ratio_check,
};
use motivic_core::frobenius::{builtin, rep_count, rep_ratio_report};
use motivic_core::motclass::MotClass;
use motivic_core::oracle::{
    count_commuting_tuples, count_conjugacy_classes, count_surface_tuples, enumerate,
    weil_sym_count, GroupId, PermGroup,
};
use motivic_core::partition::{partitions, Partition};
use motivic_core::poly::QPolynomial;
use motivic_core::repstab::{motivic_decomposition, psi_matrix_sn, rep_stability_check};
use motivic_core::zeta::{open_closed_limit_check, sym_limit, sym_power};
use motivic_core::{Error, Int, Rat};
use num_traits::Signed;

/// Work budget for the suite. `Small` skips the GL3(F3) oracle items.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Budget {
    Small,
    Full,
}

/// Catalog the suite verifies against; injectable so data errors are caught
/// by the oracle checks.
pub struct Catalog {
    entries: BTreeMap<String, GroupClassEntry>,
}

impl Catalog {
    pub fn builtin() -> Catalog {
        let mut entries = BTreeMap::new();
        for e in builtin_entries() {
            entries.insert(e.name.to_ascii_uppercase(), e);
        }
        Catalog { entries }
    }

    pub fn get(&self, name: &str) -> Result<&GroupClassEntry, Error> {
        self.entries
            .get(&name.to_ascii_uppercase())
            .ok_or_else(|| Error::UnknownGroup(name.to_string()))
    }

    pub fn insert(&mut self, entry: GroupClassEntry) {
        self.entries.insert(entry.name.to_ascii_uppercase(), entry);
    }

    pub fn entries(&self) -> impl Iterator<Item = &GroupClassEntry> {
        self.entries.values()
    }
}

#[derive(Clone, Debug)]
pub struct CriterionResult {
    pub id: u32,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        format!(
            "{} criterion {:>2}: {} — {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.detail
        )
    }
}

struct Checker {
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Checker {
    fn new() -> Self {
        Checker {
            failures: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.failures.push(what.into());
        }
    }

    fn note(&mut self, what: impl Into<String>) {
        self.notes.push(what.into());
    }

    fn finish(self, id: u32, name: &str, ok_detail: &str) -> CriterionResult {
        let passed = self.failures.is_empty();
        let mut detail = if passed {
            ok_detail.to_string()
        } else {
            format!("failed: {}", self.failures.join("; "))
        };
        if !self.notes.is_empty() {
            detail.push_str(" [");
            detail.push_str(&self.notes.join("; "));
            detail.push(']');
        }
        CriterionResult {
            id,
            name: name.to_string(),
            passed,
            detail,
        }
    }
}

fn p(coeffs: &[i64]) -> QPolynomial {
    QPolynomial::from_int_coeffs(coeffs)
}

fn eval_rat(class: &MotClass, q0: i64, guard: Option<(u64, u64)>) -> Option<Rat> {
    class.evaluate(q0, guard).ok()
}

/// Runs the whole suite and returns a result per criterion.
pub fn run_all(precision: i64, budget: Budget, catalog: &Catalog) -> Vec<CriterionResult> {
    vec![
        criterion_1_branching(),
        criterion_2_strata(),
        criterion_3_census_rank2(),
        criterion_4_oracle_specialization(budget, catalog),
        criterion_5_frobenius(),
        criterion_6_conjecture_a(precision, catalog),
        criterion_7_zeta(),
        criterion_8_census_stability(),
        criterion_9_kostka(),
        criterion_10_exclusions(),
    ]
}

fn criterion_1_branching() -> CriterionResult {
    let mut c = Checker::new();
    let sys = gl2_branching_system();
    for n in 1..=10u32 {
        let a = sys.commuting_class(n).unwrap();
        let b = gl2_closed_form(n);
        c.check(a == b, format!("branching != closed form at n = {n}"));
        match b.as_poly() {
            Ok(poly) => {
                c.check(poly.is_monic(), format!("not monic at n = {n}"));
                c.check(
                    poly.degree() == Some(2 * n as usize + 2),
                    format!("degree != 2n+2 at n = {n}"),
                );
            }
            Err(_) => c.check(false, format!("closed form not polynomial at n = {n}")),
        }
    }
    c.finish(
        1,
        "branching matrix = closed form (n = 1..10, monic of degree 2n+2)",
        "w A^(n-1) v^T equals the closed form exactly for n = 1..10",
    )
}

fn criterion_2_strata() -> CriterionResult {
    let mut c = Checker::new();
    let strata = gl2_strata();
    c.check(strata.validate().is_ok(), "stratum identities");
    c.check(strata.c_class == p(&[0, 0, 1]), "[C] != q^2");
    c.check(strata.x_class == p(&[0, 1, 1]), "[X] != q^2 + q");
    // the two printed forms of the M class coincide
    let other_form = &p(&[-1, 1]) * &p(&[0, -1, -1, 1]);
    c.check(
        other_form == strata.m_class,
        "(q-1)(q^3-q^2-q) != (q^2-q)(q^2-q-1)",
    );
    c.finish(
        2,
        "GL2 strata identities",
        "scalar + J + M = [GL2]; [M] = [C](q^2-q) + [X](1-q); 2[X] = 2q^2+2q",
    )
}

fn criterion_3_census_rank2() -> CriterionResult {
    let mut c = Checker::new();
    c.check(
        census_glr(2).unwrap() == MotClass::from_poly(p(&[-1, 0, 1])),
        "census(2) != q^2 - 1",
    );
    c.check(
        c2_glr_class(2).unwrap() == gl2_closed_form(2),
        "[GL2] * census(2) != closed form at n = 2",
    );
    c.finish(
        3,
        "rank-2 census",
        "census(GL2) = q^2 - 1 and [C_2(GL2)] = [GL2][census] matches the closed form",
    )
}

fn criterion_4_oracle_specialization(budget: Budget, catalog: &Catalog) -> CriterionResult {
    let mut c = Checker::new();
    // order formulas against the catalog classes
    let order_cases: &[(GroupId, &str, &[u64])] = &[
        (GroupId::Gl2, "GL2", &[2, 3, 5]),
        (GroupId::U2, "U2", &[2, 3, 5]),
        (GroupId::D2, "T2", &[2, 3, 5]),
        (GroupId::Sl2, "SL2", &[3, 5]),
    ];
    for &(id, name, primes) in order_cases {
        match catalog.get(name) {
            Ok(entry) => {
                for &q in primes {
                    let group = enumerate(id, q).unwrap();
                    let guard = entry.specialization_guard.map(|g| g.as_pair());
                    let predicted = eval_rat(&entry.class, q as i64, guard);
                    c.check(
                        predicted == Some(Rat::from_integer(Int::from(group.order() as u64))),
                        format!("order of {name}(F_{q})"),
                    );
                }
            }
            Err(_) => c.check(false, format!("missing catalog entry {name}")),
        }
    }
    // GL2 commuting pairs and triples
    for (q, expected) in [(2i64, 18u64), (3, 384), (5, 11520)] {
        let group = enumerate(GroupId::Gl2, q as u64).unwrap();
        let counted = count_commuting_tuples(&group, 2).unwrap();
        c.check(
            counted == Int::from(expected),
            format!("GL2 pairs at q = {q}"),
        );
        c.check(
            eval_rat(&gl2_closed_form(2), q, None) == Some(Rat::from_integer(Int::from(expected))),
            format!("closed form pairs at q = {q}"),
        );
    }
    for q in [2i64, 3] {
        let group = enumerate(GroupId::Gl2, q as u64).unwrap();
        let counted = count_commuting_tuples(&group, 3).unwrap();
        c.check(
            eval_rat(&gl2_closed_form(3), q, None) == Some(Rat::from_integer(counted)),
            format!("GL2 triples at q = {q}"),
        );
    }
    // SL2 commuting pairs (odd primes only)
    for q in [3i64, 5] {
        let group = enumerate(GroupId::Sl2, q as u64).unwrap();
        let counted = count_surface_tuples(&group, 1).unwrap();
        let predicted = rep_surface_class("SL2", 1)
            .unwrap()
            .evaluate(q, Some((2, 1)))
            .unwrap();
        c.check(
            predicted == Rat::from_integer(counted.clone()),
            format!("SL2 pairs at q = {q}"),
        );
        if q == 3 {
            c.check(counted == Int::from(168), "SL2(F3) pairs != 168");
        }
    }
    // U2 pairs at q = 3
    {
        let group = enumerate(GroupId::U2, 3).unwrap();
        let counted = count_surface_tuples(&group, 1).unwrap();
        let predicted = rep_surface_class("U2", 1)
            .unwrap()
            .evaluate(3, None)
            .unwrap();
        c.check(predicted == Rat::from_integer(counted), "U2 pairs at q = 3");
    }
    // conjugacy classes of GL2(F3)
    {
        let group = enumerate(GroupId::Gl2, 3).unwrap();
        let classes = count_conjugacy_classes(&group);
        c.check(classes == 8, "GL2(F3) classes != 8");
        c.check(
            eval_rat(&census_glr(2).unwrap(), 3, None) == Some(Rat::from_integer(Int::from(8))),
            "census(2) at q = 3",
        );
    }
    // GL3 items: rank-3 census and pairs
    {
        let group = enumerate(GroupId::Gl3, 2).unwrap();
        c.check(
            count_conjugacy_classes(&group) as i64 == 6,
            "GL3(F2) classes != 6",
        );
        c.check(
            count_commuting_tuples(&group, 2).unwrap() == Int::from(1008),
            "GL3(F2) pairs != 1008",
        );
        c.check(
            eval_rat(&c2_glr_class(3).unwrap(), 2, None)
                == Some(Rat::from_integer(Int::from(1008))),
            "[C_2(GL3)] at q = 2",
        );
    }
    if budget == Budget::Full {
        let group = enumerate(GroupId::Gl3, 3).unwrap();
        let classes = count_conjugacy_classes(&group);
        c.check(
            eval_rat(&census_glr(3).unwrap(), 3, None)
                == Some(Rat::from_integer(Int::from(classes as u64))),
            "census(3) at q = 3",
        );
    } else {
        c.note("GL3(F3) items skipped (small budget)");
    }
    c.finish(
        4,
        "oracle specialization",
        "orders, commuting pairs/triples, and class counts match brute force",
    )
}

fn criterion_5_frobenius() -> CriterionResult {
    let mut c = Checker::new();
    let s3 = builtin("S3").unwrap();
    let group = PermGroup::generate(s3.generators.as_ref().unwrap()).unwrap();
    for (g, expected) in [(1u32, 18u64), (2, 486)] {
        let formula = rep_count(&s3, g).unwrap();
        let brute = count_surface_tuples(&group, g).unwrap();
        c.check(formula == Int::from(expected), format!("rep_count(S3,{g})"));
        c.check(brute == Int::from(expected), format!("enumeration(S3,{g})"));
    }
    let report = rep_ratio_report(&s3, 12).unwrap();
    c.check(
        report.limit == Rat::new(Int::from(1), Int::from(3)),
        "limit != 1/3",
    );
    let last = &report.ratios.last().unwrap().1;
    let gap = (last - &report.limit).abs();
    c.check(
        gap < Rat::new(Int::from(1), Int::from(1_000_000)),
        "ratio not within 1e-6 of 1/3 by genus 12",
    );
    c.finish(
        5,
        "Frobenius counts",
        "S3 counts match exhaustive enumeration; ratio within 1e-6 of 1/3 by genus 12",
    )
}

fn criterion_6_conjecture_a(precision: i64, catalog: &Catalog) -> CriterionResult {
    let mut c = Checker::new();
    let n = precision.max(10);
    // SL2 -> 1/(q(q^2-1)), stabilizing by g ~ N/2 + 2
    match catalog
        .get("SL2")
        .and_then(|e| verify_conjecture_a_with(e, "SL2", n, 20))
    {
        Ok(r) => {
            c.check(r.report.converged, "SL2 did not converge");
            c.check(r.matches_target, "SL2 limit != 1/(q(q^2-1))");
            let expected = MotClass::new(QPolynomial::one(), 1, vec![(2, 1)]).expand(n);
            c.check(r.report.limit == Some(expected), "SL2 limit series");
            c.check(
                r.report
                    .stabilization_index
                    .is_some_and(|i| i as i64 <= n / 2 + 2),
                "SL2 stabilization later than g = N/2 + 2",
            );
        }
        Err(e) => c.check(false, format!("SL2: {e}")),
    }
    // U2 -> 1/q
    match catalog
        .get("U2")
        .and_then(|e| verify_conjecture_a_with(e, "U2", n, 20))
    {
        Ok(r) => {
            c.check(r.report.converged, "U2 did not converge");
            c.check(r.matches_target, "U2 limit != 1/q");
            c.check(
                r.report.limit == Some(MotClass::inv_q_pow(1).expand(n)),
                "U2 limit series",
            );
        }
        Err(e) => c.check(false, format!("U2: {e}")),
    }
    // GmZ2 -> 2/(q-1), flagged as different from the target 1/(q-1)
    match catalog
        .get("GMZ2")
        .and_then(|e| verify_conjecture_a_with(e, "GmZ2", 6, 20))
    {
        Ok(r) => {
            c.check(r.report.converged, "GmZ2 did not converge");
            let two_over = MotClass::from_int(2)
                .div(&MotClass::from_poly(QPolynomial::q_pow_minus_one(1)))
                .unwrap();
            c.check(
                r.report.limit == Some(two_over.expand(6)),
                "GmZ2 limit != 2/(q-1)",
            );
            c.check(!r.matches_target, "GmZ2 mismatch was not flagged");
        }
        Err(e) => c.check(false, format!("GmZ2: {e}")),
    }
    // the character stack sequence diverges
    match catalog
        .get("GMZ2")
        .and_then(|e| verify_conjecture_a_with(e, "GmZ2_charstack", 6, 20))
    {
        Ok(r) => c.check(!r.report.converged, "character stack reported convergent"),
        Err(e) => c.check(false, format!("GmZ2_charstack: {e}")),
    }
    c.finish(
        6,
        "surface-group limits",
        "SL2 -> 1/(q(q^2-1)), U2 -> 1/q, GmZ2 -> 2/(q-1) flagged, character stack divergent",
    )
}

fn criterion_7_zeta() -> CriterionResult {
    let mut c = Checker::new();
    // Sym^n(q^i) = q^(n i)
    for i in 0..=4usize {
        for n in 0..=6usize {
            let sym = sym_power(&QPolynomial::one().shift_up(i), n).unwrap();
            c.check(
                sym == QPolynomial::one().shift_up(n * i),
                format!("Sym^{n}(q^{i})"),
            );
        }
    }
    c.check(
        sym_power(&p(&[1, 1]), 2).unwrap() == p(&[1, 1, 1]),
        "Sym^2(q+1) != q^2+q+1",
    );
    // monic/non-monic dichotomy on 50 seeded random polynomials
    let mut state = 0x9e3779b97f4a7c15u64;
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state
    };
    let mut monic_seen = 0;
    for k in 0..50 {
        let deg = 1 + (next() % 4) as usize;
        let mut coeffs: Vec<i64> = (0..deg).map(|_| (next() % 9) as i64 - 4).collect();
        let lead = 1 + (next() % 3) as i64;
        coeffs.push(lead);
        let poly = QPolynomial::from_int_coeffs(&coeffs);
        let stable = sym_limit(&poly).is_ok();
        if poly.is_monic() {
            monic_seen += 1;
        }
        c.check(
            stable == poly.is_monic(),
            format!("dichotomy failed on sample {k}"),
        );
    }
    c.check(monic_seen > 5, "sampler produced too few monic polynomials");
    // open-closed instance: P^1 = A^1 + point
    c.check(
        open_closed_limit_check(&p(&[0, 1]), &p(&[1])).unwrap(),
        "open-closed check on P^1",
    );
    // Weil zeta agreement for symmetric squares of G_m and GL2
    {
        let gm = p(&[-1, 1]);
        let counts: Vec<Int> = (1..=2).map(|d| Int::from(3i64.pow(d) - 1)).collect();
        let weil = weil_sym_count(&counts, 2).unwrap();
        let symbolic = sym_power(&gm, 2)
            .unwrap()
            .eval(&Rat::from_integer(Int::from(3)));
        c.check(
            Rat::from_integer(weil) == symbolic,
            "G_m symmetric square at q = 3",
        );
    }
    {
        let gl2 = motivic_core::catalog::gl_class(2).as_poly().unwrap();
        let counts: Vec<Int> = (1..=2)
            .map(|d| {
                gl2.eval(&Rat::from_integer(Int::from(2i64.pow(d))))
                    .to_integer()
            })
            .collect();
        let weil = weil_sym_count(&counts, 2).unwrap();
        let symbolic = sym_power(&gl2, 2)
            .unwrap()
            .eval(&Rat::from_integer(Int::from(2)));
        c.check(
            Rat::from_integer(weil) == symbolic,
            "GL2 symmetric square at q = 2",
        );
    }
    c.finish(
        7,
        "zeta and symmetric powers",
        "Sym powers, monic dichotomy on 50 samples, open-closed identity, Weil agreement",
    )
}

fn criterion_8_census_stability() -> CriterionResult {
    let mut c = Checker::new();
    // the second-highest census term has degree ~ r/2, so precision 10
    // stabilizes exactly from rank 20
    let one_series = MotClass::one().expand(10);
    let ratio = |r: u32| (&census_glr(r).unwrap() * &MotClass::inv_q_pow(r)).expand(10);
    for r in [20u32, 21, 22] {
        c.check(
            ratio(r) == one_series,
            format!("census({r})/q^{r} != 1 at precision 10"),
        );
    }
    c.check(
        ratio(19) != one_series,
        "census(19)/q^19 should not yet be stable",
    );
    match rank_stability_report(24, 10) {
        Ok(report) => {
            c.check(report.converged, "rank stability did not converge");
            c.check(
                report.limit == Some(one_series.clone()),
                "rank stability limit != 1",
            );
            c.check(
                report.stabilization_index == Some(20),
                "stabilization index != 20",
            );
        }
        Err(e) => c.check(false, format!("rank stability: {e}")),
    }
    c.finish(
        8,
        "census and rank stability",
        "census(r)/q^r = 1 at precision 10 for r = 20..22 (sharp at 19); [C_2(GL_r)]/(q^r[GL_r]) -> 1",
    )
}

fn criterion_9_kostka() -> CriterionResult {
    let mut c = Checker::new();
    for n in 1..=8u32 {
        match psi_matrix_sn(n) {
            Ok(m) => c.check(m.det() == 1, format!("det != 1 at n = {n}")),
            Err(e) => c.check(false, format!("psi matrix n = {n}: {e}")),
        }
    }
    // decomposition round-trip on 20 seeded random inputs over n <= 5
    let mut state = 0x517cc1b727220a95u64;
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state
    };
    let mut runs = 0;
    'outer: for n in 1..=5u32 {
        for _ in 0..4 {
            let mut quotients = BTreeMap::new();
            for lambda in partitions(n).unwrap() {
                let coeffs: Vec<i64> = (0..3).map(|_| (next() % 9) as i64 - 4).collect();
                quotients.insert(
                    lambda,
                    MotClass::new(
                        QPolynomial::from_int_coeffs(&coeffs),
                        (next() % 2) as u32,
                        vec![],
                    ),
                );
            }
            let d = motivic_decomposition(n, &quotients).unwrap();
            for (lambda, q) in &quotients {
                if &d.reconstruct(lambda).unwrap() != q {
                    c.check(false, format!("round trip failed at n = {n}"));
                    break 'outer;
                }
            }
            runs += 1;
        }
    }
    c.check(runs == 20, "round-trip sample count");
    // (A^1)^n decomposes to the trivial isotype only
    for n in 1..=6u32 {
        let mut quotients = BTreeMap::new();
        for lambda in partitions(n).unwrap() {
            quotients.insert(
                lambda,
                MotClass::from_poly(QPolynomial::one().shift_up(n as usize)),
            );
        }
        let d = motivic_decomposition(n, &quotients).unwrap();
        for (mu, coeff) in &d.coefficients {
            if mu == &Partition::new(vec![n]) {
                c.check(
                    coeff == &MotClass::from_poly(QPolynomial::one().shift_up(n as usize)),
                    format!("trivial isotype coefficient at n = {n}"),
                );
            } else {
                c.check(
                    coeff.is_zero(),
                    format!("nontrivial isotype at n = {n}, mu = {mu}"),
                );
            }
        }
    }
    // representation stability dichotomy
    let converges = |x: &QPolynomial, lambda: &Partition| {
        rep_stability_check(x, lambda, 8)
            .map(|r| r.converged)
            .unwrap_or(false)
    };
    c.check(
        converges(&p(&[0, -1, 1]), &Partition::new(vec![1])),
        "q(q-1) should converge",
    );
    c.check(
        converges(&(&p(&[-1, 1]) * &p(&[-1, 1])), &Partition::new(vec![2])),
        "(q-1)^2 should converge",
    );
    c.check(
        !converges(&p(&[0, 2]), &Partition::new(vec![1])),
        "2q should diverge",
    );
    c.finish(
        9,
        "Kostka and motivic decomposition",
        "unitriangular psi (n <= 8), 20 round trips, affine powers trivial, stability dichotomy",
    )
}

fn criterion_10_exclusions() -> CriterionResult {
    let mut c = Checker::new();
    // leading-order consistency is the only statement made for U3..U5
    for name in ["U3", "U4", "U5"] {
        match Catalog::builtin()
            .get(name)
            .and_then(|e| verify_conjecture_a_with(e, name, 8, 10))
        {
            Ok(r) => c.check(
                r.report.converged && r.matches_target,
                format!("{name} leading-order consistency"),
            ),
            Err(e) => c.check(false, format!("{name}: {e}")),
        }
    }
    // SL_r census: oracle data points only, no closed form asserted
    match sl2_commuting_ratio_check(&p(&[4, 1])) {
        Ok(report) => {
            c.check(report.all_match, "SL2 census points do not match q + 4");
            c.note(format!(
                "SL2(F_q) class counts for q = 3,5,7: {:?} (exploratory)",
                report
                    .points
                    .iter()
                    .map(|pt| pt.conjugacy_classes)
                    .collect::<Vec<_>>()
            ));
        }
        Err(e) => c.check(false, format!("SL2 census: {e}")),
    }
    c.note("U3-U5 full classes and the general SL_r census are out of scope; equivariant statements are verified through their class-level shadows only");
    c.finish(
        10,
        "documented exclusions",
        "leading-order checks for U3-U5 and exploratory SL2 census data in place",
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_lookup_is_case_insensitive() {
        let catalog = Catalog::builtin();
        assert!(catalog.get("sl2").is_ok());
        assert!(catalog.get("GmZ2").is_ok());
        assert!(catalog.get("nope").is_err());
    }
}
