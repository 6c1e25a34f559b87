//! Built-in virtual classes of algebraic groups, closed-form surface-group
//! representation variety classes, and the limit pipeline comparing
//! normalized representation classes against `[G/[G,G]] / [G]`.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_traits::One;

use crate::error::Error;
use crate::limit::{limit_detect, Detection, LimitReport};
use crate::motclass::MotClass;
use crate::poly::QPolynomial;
use crate::series::LaurentSeries;
use crate::{Int, MotSequence, Rat};

/// Congruence guard on specialization primes: only `q0 = residue (mod
/// modulus)` is admissible.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Guard {
    pub modulus: u64,
    pub residue: u64,
}

impl Guard {
    pub fn odd_only() -> Guard {
        Guard {
            modulus: 2,
            residue: 1,
        }
    }

    pub fn as_pair(&self) -> (u64, u64) {
        (self.modulus, self.residue)
    }

    pub fn admits(&self, q0: i64) -> bool {
        q0.rem_euclid(self.modulus as i64) as u64 == self.residue
    }
}

/// One catalog row: a group's class, its commutator-quotient data, and the
/// admissibility guard for finite-field specialization.
#[derive(Clone, Debug)]
pub struct GroupClassEntry {
    pub name: String,
    pub rank_param: Option<u32>,
    pub class: MotClass,
    pub dim: i64,
    pub commutator_quotient_class: MotClass,
    pub derived_subgroup_class: MotClass,
    pub specialization_guard: Option<Guard>,
}

impl GroupClassEntry {
    /// Checks `dim = dimension(class)` and the splitting
    /// `class = derived * quotient`.
    pub fn validate(&self) -> Result<(), Error> {
        if self.class.dimension()? != self.dim {
            return Err(Error::InvariantViolated(alloc::format!(
                "{}: stored dim {} disagrees with the class",
                self.name,
                self.dim
            )));
        }
        let product = &self.derived_subgroup_class * &self.commutator_quotient_class;
        if product != self.class {
            return Err(Error::InvariantViolated(alloc::format!(
                "{}: class does not split as derived * quotient",
                self.name
            )));
        }
        Ok(())
    }
}

/// `[GL_r] = prod_{i=0}^{r-1} (q^r - q^i)`.
pub fn gl_class(r: u32) -> MotClass {
    assert!(r >= 1, "rank must be positive");
    let mut acc = QPolynomial::one();
    for i in 0..r {
        let factor = &QPolynomial::monomial(r as usize, Rat::one())
            - &QPolynomial::monomial(i as usize, Rat::one());
        acc = &acc * &factor;
    }
    MotClass::from_poly(acc)
}

/// `[SL_r] = [GL_r] / (q - 1)`.
pub fn sl_class(r: u32) -> MotClass {
    gl_class(r)
        .div(&MotClass::from_poly(QPolynomial::q_pow_minus_one(1)))
        .expect("q - 1 divides [GL_r]")
}

/// Invertible upper triangular matrices: `(q-1)^r q^(r(r-1)/2)`.
pub fn upper_triangular_class(r: u32) -> MotClass {
    assert!(r >= 1, "rank must be positive");
    let torus = QPolynomial::q_pow_minus_one(1).pow(r);
    MotClass::from_poly(torus.shift_up((r * (r - 1) / 2) as usize))
}

/// The split torus: `(q-1)^r`.
pub fn torus_class(r: u32) -> MotClass {
    assert!(r >= 1, "rank must be positive");
    MotClass::from_poly(QPolynomial::q_pow_minus_one(1).pow(r))
}

fn two_pow(e: u32) -> Rat {
    Rat::from_integer(Int::from(2).pow(e))
}

fn q_plus_one() -> QPolynomial {
    QPolynomial::from_int_coeffs(&[1, 1])
}

fn q_minus_one() -> QPolynomial {
    QPolynomial::q_pow_minus_one(1)
}

/// Closed-form classes of surface-group representation varieties for the
/// groups whose full formulas are known: `SL2`, `U2`, `GmZ2`, and the
/// character stack `GmZ2_charstack`. The constants `2^(2g)` enter as
/// integer coefficients, never as powers of `q`.
pub fn rep_surface_class(group: &str, g: u32) -> Result<MotClass, Error> {
    assert!(g >= 1, "genus must be positive");
    let q = QPolynomial::q();
    match normalize(group).as_str() {
        "SL2" => {
            let a = &q.pow(2 * g - 1) * &q_plus_one().pow(2 * g - 1);
            let first =
                (&a * &q_minus_one()) * (&QPolynomial::constant(two_pow(2 * g) - Rat::one()) + &q);
            let b = &q.pow(2 * g - 1) * &q_minus_one().pow(2 * g - 1);
            let second = (&b * &q_plus_one())
                * (&QPolynomial::constant(two_pow(2 * g) - Rat::from_integer(Int::from(3))) + &q);
            let third = (&q.pow(2 * g - 1) + &q)
                * (&q_minus_one().pow(2 * g - 1) * &q_plus_one().pow(2 * g - 1));
            let half = Rat::new(Int::from(1), Int::from(2));
            Ok(MotClass::from_poly(
                &(&first + &second).scale(&half) + &third,
            ))
        }
        "U2" => {
            let inner = &q_minus_one().pow(2 * g - 1) + &QPolynomial::one();
            Ok(MotClass::from_poly(
                &(&q.pow(2 * g - 1) * &q_minus_one().pow(2 * g + 1)) * &inner,
            ))
        }
        "GMZ2" => {
            let inner =
                &q + &QPolynomial::constant(two_pow(2 * g + 1) - Rat::from_integer(Int::from(3)));
            Ok(MotClass::from_poly(&q_minus_one().pow(2 * g - 1) * &inner))
        }
        "GMZ2_CHARSTACK" => {
            let half = Rat::new(Int::from(1), Int::from(2));
            let minus = &q_minus_one().pow(2 * g - 2)
                * &(&q
                    + &QPolynomial::constant(two_pow(2 * g + 1) - Rat::from_integer(Int::from(3))));
            let plus = &q_plus_one().pow(2 * g - 2)
                * &(&q + &QPolynomial::constant(two_pow(2 * g + 1) - Rat::one()));
            Ok(MotClass::from_poly((&minus + &plus).scale(&half)))
        }
        other => Err(Error::UnknownGroup(other.to_string())),
    }
}

/// Leading terms of the upper-triangular representation classes:
/// `U2 -> q^(2g-1)(q-1)^(4g)`, `U3 -> q^(6g-3)(q-1)^(6g)`,
/// `U4 -> q^(12g-6)(q-1)^(8g)`, `U5 -> q^(20g-10)(q-1)^(10g)`.
pub fn leading_term(group: &str, g: u32) -> Result<MotClass, Error> {
    assert!(g >= 1, "genus must be positive");
    let (qexp, eexp) = match normalize(group).as_str() {
        "U2" => (2 * g - 1, 4 * g),
        "U3" => (6 * g - 3, 6 * g),
        "U4" => (12 * g - 6, 8 * g),
        "U5" => (20 * g - 10, 10 * g),
        other => return Err(Error::UnknownGroup(other.to_string())),
    };
    Ok(MotClass::from_poly(
        q_minus_one().pow(eexp).shift_up(qexp as usize),
    ))
}

fn normalize(name: &str) -> String {
    let n = name.trim();
    if n.eq_ignore_ascii_case("gmz2") {
        return String::from("GMZ2");
    }
    if n.eq_ignore_ascii_case("gmz2_charstack") || n.eq_ignore_ascii_case("gmz2-charstack") {
        return String::from("GMZ2_CHARSTACK");
    }
    n.to_ascii_uppercase()
}

/// Looks up a catalog entry by name. Rank-parameterized families accept
/// either a separate rank (`"GL"` with `rank = Some(3)`) or a fused name
/// (`"GL3"`).
pub fn entry(name: &str, rank: Option<u32>) -> Result<GroupClassEntry, Error> {
    let norm = normalize(name);
    let (family, r) = if norm == "GMZ2" {
        (norm.clone(), 0)
    } else {
        match rank {
            Some(r) => (norm.clone(), r),
            None => split_rank(&norm).unwrap_or((norm.clone(), 0)),
        }
    };
    let one = MotClass::one();
    let entry = match family.as_str() {
        "GL" if r >= 1 => GroupClassEntry {
            name: alloc::format!("GL{r}"),
            rank_param: Some(r),
            class: gl_class(r),
            dim: (r * r) as i64,
            commutator_quotient_class: MotClass::from_poly(q_minus_one()),
            derived_subgroup_class: sl_class(r),
            specialization_guard: None,
        },
        "SL" if r >= 1 => GroupClassEntry {
            name: alloc::format!("SL{r}"),
            rank_param: Some(r),
            class: sl_class(r),
            dim: (r * r) as i64 - 1,
            commutator_quotient_class: one.clone(),
            derived_subgroup_class: sl_class(r),
            // SL2(F2) counts disagree with the characteristic-0 polynomial;
            // only odd residues are admissible
            specialization_guard: if r == 2 {
                Some(Guard::odd_only())
            } else {
                None
            },
        },
        "U" if r >= 1 => GroupClassEntry {
            name: alloc::format!("U{r}"),
            rank_param: Some(r),
            class: upper_triangular_class(r),
            dim: (r * (r + 1) / 2) as i64,
            commutator_quotient_class: torus_class(r),
            derived_subgroup_class: MotClass::from_poly(
                QPolynomial::one().shift_up((r * (r - 1) / 2) as usize),
            ),
            specialization_guard: None,
        },
        "T" if r >= 1 => GroupClassEntry {
            name: alloc::format!("T{r}"),
            rank_param: Some(r),
            class: torus_class(r),
            dim: r as i64,
            commutator_quotient_class: torus_class(r),
            derived_subgroup_class: one.clone(),
            specialization_guard: None,
        },
        "GMZ2" => GroupClassEntry {
            name: String::from("GmZ2"),
            rank_param: None,
            class: MotClass::from_poly(q_minus_one().scale(&Rat::from_integer(Int::from(2)))),
            dim: 1,
            commutator_quotient_class: MotClass::from_int(2),
            derived_subgroup_class: MotClass::from_poly(q_minus_one()),
            // the finite shadow is dihedral of order 2(q-1); even q disagree
            specialization_guard: Some(Guard::odd_only()),
        },
        _ => return Err(Error::UnknownGroup(norm)),
    };
    Ok(entry)
}

fn split_rank(name: &str) -> Option<(String, u32)> {
    let pos = name.find(|c: char| c.is_ascii_digit())?;
    let (family, digits) = name.split_at(pos);
    let r: u32 = digits.parse().ok()?;
    Some((String::from(family), r))
}

/// The concrete rows shipped with the engine (rank families at their small
/// ranks plus the non-connected example).
pub fn builtin_entries() -> Vec<GroupClassEntry> {
    let mut out = Vec::new();
    for name in [
        "GL2", "GL3", "SL2", "SL3", "U2", "U3", "U4", "U5", "T1", "T2", "GmZ2",
    ] {
        out.push(entry(name, None).expect("builtin entries resolve"));
    }
    out
}

/// `[G/[G,G]] / [G]`, the conjectured limit of the normalized
/// representation classes.
pub fn conjecture_a_target(group: &str, rank: Option<u32>) -> Result<MotClass, Error> {
    let e = entry(group, rank)?;
    e.commutator_quotient_class.div(&e.class)
}

/// Which kind of formula backed a conjecture verification.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FormulaKind {
    Full,
    LeadingTermOnly,
}

/// A shipped surface-group formula: full closed form or leading term only.
#[derive(Clone, Debug)]
pub struct SurfaceRepFormula {
    pub group: String,
    pub kind: FormulaKind,
}

impl SurfaceRepFormula {
    pub fn class_at(&self, g: u32) -> Result<MotClass, Error> {
        match self.kind {
            FormulaKind::Full => rep_surface_class(&self.group, g),
            FormulaKind::LeadingTermOnly => leading_term(&self.group, g),
        }
    }
}

/// The formulas shipped with the engine.
pub fn surface_formulas() -> Vec<SurfaceRepFormula> {
    let full = ["SL2", "U2", "GmZ2", "GmZ2_charstack"];
    let leading = ["U3", "U4", "U5"];
    let mut out = Vec::new();
    for g in full {
        out.push(SurfaceRepFormula {
            group: String::from(g),
            kind: FormulaKind::Full,
        });
    }
    for g in leading {
        out.push(SurfaceRepFormula {
            group: String::from(g),
            kind: FormulaKind::LeadingTermOnly,
        });
    }
    out
}

/// Outcome of a conjecture verification for one group.
#[derive(Clone, Debug)]
pub struct ConjectureAReport {
    pub group: String,
    pub kind: FormulaKind,
    pub report: LimitReport,
    pub target: LaurentSeries,
    /// Whether the detected limit equals the target expansion.
    pub matches_target: bool,
    pub note: String,
}

/// Runs the limit scan for `g -> [Rep_G(M_g)] / [G]^(2g)` and compares the
/// detected limit to `[G/[G,G]]/[G]`. Leading-term-only groups get the exact
/// all-genus identity of their leading ratio instead of a scan; the
/// non-connected `GmZ2` converges to `2/(q-1)` and is flagged as a mismatch.
pub fn verify_conjecture_a(
    group: &str,
    precision: i64,
    g_max: u32,
) -> Result<ConjectureAReport, Error> {
    let norm = normalize(group);
    let entry_name = if norm == "GMZ2_CHARSTACK" {
        "GmZ2"
    } else {
        norm.as_str()
    };
    let cat = entry(entry_name, None)?;
    verify_conjecture_a_with(&cat, group, precision, g_max)
}

/// Like `verify_conjecture_a` but against a caller-supplied catalog entry
/// for the group's class and commutator data.
pub fn verify_conjecture_a_with(
    cat: &GroupClassEntry,
    group: &str,
    precision: i64,
    g_max: u32,
) -> Result<ConjectureAReport, Error> {
    let norm = normalize(group);
    let target_class = cat.commutator_quotient_class.div(&cat.class)?;
    let target = target_class.expand(precision);

    // [G]^2g must be invertible for the normalized sequence to live in the
    // localization; user-supplied entries can violate this
    let inv_class = cat.class.try_inverse()?;

    let leading_only = matches!(norm.as_str(), "U3" | "U4" | "U5");
    if leading_only {
        // the leading ratio equals the target exactly at every genus
        let mut consistent = true;
        for g in 1..=6 {
            let ratio = &leading_term(&norm, g)? * &inv_class.pow(2 * g);
            if ratio != target_class {
                consistent = false;
                break;
            }
        }
        let report = LimitReport {
            converged: consistent,
            limit: consistent.then(|| target.clone()),
            stabilization_index: Some(1),
            precision,
            window: 0,
            detection: consistent.then_some(Detection::ExactWindow),
        };
        return Ok(ConjectureAReport {
            group: norm,
            kind: FormulaKind::LeadingTermOnly,
            report,
            target,
            matches_target: consistent,
            note: String::from(
                "leading-order consistency only; lower-order terms of the full class are unknown",
            ),
        });
    }

    // probe once so groups without a full formula error instead of
    // panicking inside the sequence
    rep_surface_class(&norm, 1)?;
    let name = norm.clone();
    let seq = MotSequence::new(alloc::format!("Rep_{norm}(M_g)/[G]^2g"), move |g| {
        &rep_surface_class(&name, g).expect("full formula exists") * &inv_class.pow(2 * g)
    });
    let report = limit_detect(&seq, precision, 3, 1, g_max);
    let matches_target = report.limit.as_ref() == Some(&target);
    let note = if !report.converged {
        String::from("sequence reported divergent")
    } else if matches_target {
        String::from("limit matches [G/[G,G]]/[G]")
    } else {
        String::from("limit exists but differs from [G/[G,G]]/[G]")
    };
    Ok(ConjectureAReport {
        group: norm,
        kind: FormulaKind::Full,
        report,
        target,
        matches_target,
        note,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::limit::Detection;

    fn p(coeffs: &[i64]) -> QPolynomial {
        QPolynomial::from_int_coeffs(coeffs)
    }

    #[test]
    fn classical_group_classes() {
        assert_eq!(gl_class(2), MotClass::from_poly(p(&[0, 1, -1, -1, 1])));
        assert_eq!(sl_class(2), MotClass::from_poly(p(&[0, -1, 0, 1])));
        assert_eq!(
            sl_class(2).evaluate(3, None).unwrap(),
            Rat::from_integer(Int::from(24))
        );
        assert_eq!(
            upper_triangular_class(2),
            MotClass::from_poly(&p(&[0, 1]) * &(&p(&[-1, 1]) * &p(&[-1, 1])))
        );
        assert_eq!(
            torus_class(2),
            MotClass::from_poly(&p(&[-1, 1]) * &p(&[-1, 1]))
        );
        assert_eq!(
            gl_class(3).evaluate(2, None).unwrap(),
            Rat::from_integer(Int::from(168))
        );
    }

    #[test]
    fn entries_validate() {
        for e in builtin_entries() {
            e.validate()
                .unwrap_or_else(|err| panic!("{}: {err}", e.name));
        }
    }

    #[test]
    fn surface_classes_at_genus_one() {
        // SL2: q(q^2-1)(q+4)
        let expected = &(&p(&[0, 1]) * &p(&[-1, 0, 1])) * &p(&[4, 1]);
        assert_eq!(
            rep_surface_class("SL2", 1).unwrap(),
            MotClass::from_poly(expected)
        );
        assert_eq!(
            rep_surface_class("SL2", 1)
                .unwrap()
                .evaluate(3, Some((2, 1)))
                .unwrap(),
            Rat::from_integer(Int::from(168))
        );
        // U2: q^2 (q-1)^3
        let expected = (&p(&[-1, 1]) * &(&p(&[-1, 1]) * &p(&[-1, 1]))).shift_up(2);
        assert_eq!(
            rep_surface_class("U2", 1).unwrap(),
            MotClass::from_poly(expected)
        );
        assert_eq!(
            rep_surface_class("U2", 1)
                .unwrap()
                .evaluate(3, None)
                .unwrap(),
            Rat::from_integer(Int::from(72))
        );
        // GmZ2: (q-1)(q+5)
        assert_eq!(
            rep_surface_class("GmZ2", 1).unwrap(),
            MotClass::from_poly(&p(&[-1, 1]) * &p(&[5, 1]))
        );
    }

    #[test]
    fn leading_terms() {
        assert_eq!(
            leading_term("U3", 2).unwrap(),
            MotClass::from_poly(QPolynomial::q_pow_minus_one(1).pow(12).shift_up(9))
        );
        assert_eq!(
            leading_term("U5", 1).unwrap(),
            MotClass::from_poly(QPolynomial::q_pow_minus_one(1).pow(10).shift_up(10))
        );
        assert!(leading_term("U6", 1).is_err());
    }

    #[test]
    fn u2_leading_ratio_is_one_over_q() {
        // leading_term(U2, g) / [U2]^(2g) = 1/q exactly, for every genus
        let inv = upper_triangular_class(2).try_inverse().unwrap();
        for g in 1..=6 {
            let ratio = &leading_term("U2", g).unwrap() * &inv.pow(2 * g);
            assert_eq!(ratio, MotClass::inv_q_pow(1), "g = {g}");
            assert_eq!(ratio.expand(8), MotClass::inv_q_pow(1).expand(8), "g = {g}");
        }
    }

    #[test]
    fn u2_full_formula_has_the_stated_leading_term() {
        for g in 1..=6 {
            let full = rep_surface_class("U2", g).unwrap();
            let lead = leading_term("U2", g).unwrap();
            let diff = &full - &lead;
            let full_deg = full.numerator().degree().unwrap();
            match diff.numerator().degree() {
                None => {}
                Some(d) => assert!(d < full_deg, "g = {g}"),
            }
        }
    }

    #[test]
    fn targets() {
        // SL2: 1/(q(q^2-1))
        let t = conjecture_a_target("SL2", None).unwrap();
        assert_eq!(t, MotClass::new(QPolynomial::one(), 1, vec![(2, 1)]));
        // U2: 1/q
        let t = conjecture_a_target("U2", None).unwrap();
        assert_eq!(t, MotClass::inv_q_pow(1));
        // GL_r: (q-1)/[GL_r]
        let t = conjecture_a_target("GL", Some(3)).unwrap();
        assert_eq!(
            t,
            MotClass::from_poly(q_minus_one())
                .div(&gl_class(3))
                .unwrap()
        );
        // GmZ2: 2/(2(q-1)) = 1/(q-1)
        let t = conjecture_a_target("GmZ2", None).unwrap();
        assert_eq!(t, MotClass::inv_cyclo(1));
    }

    #[test]
    fn conjecture_a_sl2_and_u2() {
        let r = verify_conjecture_a("SL2", 8, 20).unwrap();
        assert!(r.report.converged);
        assert!(r.matches_target);
        let expected = MotClass::new(QPolynomial::one(), 1, vec![(2, 1)]).expand(8);
        assert_eq!(r.report.limit.unwrap(), expected);
        // stabilizes once 2g+1 exceeds the precision
        assert!(r.report.stabilization_index.unwrap() <= 6);

        let r = verify_conjecture_a("U2", 8, 20).unwrap();
        assert!(r.report.converged && r.matches_target);
        assert_eq!(r.report.limit.unwrap(), MotClass::inv_q_pow(1).expand(8));
    }

    #[test]
    fn conjecture_a_gmz2_mismatch() {
        let r = verify_conjecture_a("GmZ2", 6, 20).unwrap();
        assert!(r.report.converged);
        assert_eq!(r.report.detection, Some(Detection::GeometricTail));
        // limit is 2/(q-1), not the target 1/(q-1): they differ at u^1
        let two_over = MotClass::from_int(2)
            .div(&MotClass::from_poly(q_minus_one()))
            .unwrap();
        assert_eq!(r.report.limit.clone().unwrap(), two_over.expand(6));
        assert!(!r.matches_target);
        let limit = r.report.limit.unwrap();
        assert_ne!(limit.coeff(1), r.target.coeff(1));
    }

    #[test]
    fn conjecture_a_charstack_diverges() {
        let r = verify_conjecture_a("GmZ2_charstack", 6, 20).unwrap();
        assert!(!r.report.converged);
    }

    #[test]
    fn conjecture_a_leading_groups() {
        for g in ["U3", "U4", "U5"] {
            let r = verify_conjecture_a(g, 8, 10).unwrap();
            assert_eq!(r.kind, FormulaKind::LeadingTermOnly);
            assert!(r.report.converged && r.matches_target, "{g}");
        }
    }

    #[test]
    fn groups_without_formulas_error_cleanly() {
        assert!(matches!(
            verify_conjecture_a("GL2", 6, 10),
            Err(Error::UnknownGroup(_))
        ));
        assert!(matches!(
            verify_conjecture_a("T1", 6, 10),
            Err(Error::UnknownGroup(_))
        ));
    }

    #[test]
    fn guards_are_attached() {
        assert_eq!(
            entry("SL2", None).unwrap().specialization_guard,
            Some(Guard::odd_only())
        );
        assert_eq!(entry("GL2", None).unwrap().specialization_guard, None);
        assert!(entry("GmZ2", None).unwrap().specialization_guard.is_some());
        assert!(entry("nope", None).is_err());
    }
}
