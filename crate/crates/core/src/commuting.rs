//! Commuting-tuple varieties via branching matrices, the GL2 instance and
//! its closed form, the GL_r conjugacy-class census, and rank stability.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::One;

use crate::error::Error;
use crate::limit::{limit_detect, LimitReport};
use crate::motclass::MotClass;
use crate::oracle::{self, GroupId};
use crate::partition::partitions;
use crate::poly::QPolynomial;
use crate::{Int, MotSequence, Rat};

/// Census budget on the rank (partition enumeration).
pub const CENSUS_BUDGET: u32 = 40;

/// A transition system for commuting tuples: state labels, the square
/// branching matrix `A` over polynomials in `q`, an initial weight row `w`,
/// and a closing column `v`. The class of commuting n-tuples is
/// `w A^(n-1) v^T`.
#[derive(Clone, Debug)]
pub struct BranchingSystem {
    pub states: Vec<String>,
    pub matrix: Vec<Vec<QPolynomial>>,
    pub weights: Vec<QPolynomial>,
    pub closing: Vec<QPolynomial>,
}

impl BranchingSystem {
    /// Checks that all dimensions agree with the state count.
    pub fn validate(&self) -> Result<(), Error> {
        let n = self.states.len();
        if n == 0 {
            return Err(Error::InvariantViolated(String::from("no states")));
        }
        if self.matrix.len() != n
            || self.matrix.iter().any(|row| row.len() != n)
            || self.weights.len() != n
            || self.closing.len() != n
        {
            return Err(Error::InvariantViolated(String::from(
                "matrix and vector dimensions must match the state count",
            )));
        }
        Ok(())
    }

    /// `w A^(n-1) v^T` by exact iterated row-times-matrix products.
    pub fn commuting_class(&self, n: u32) -> Result<MotClass, Error> {
        if n < 1 {
            return Err(Error::PreconditionViolated(String::from(
                "n must be at least 1",
            )));
        }
        self.validate()?;
        let mut row = self.weights.clone();
        for _ in 1..n {
            let mut next = vec![QPolynomial::zero(); row.len()];
            for (j, target) in next.iter_mut().enumerate() {
                for (i, r) in row.iter().enumerate() {
                    if r.is_zero() || self.matrix[i][j].is_zero() {
                        continue;
                    }
                    *target = &*target + &(r * &self.matrix[i][j]);
                }
            }
            row = next;
        }
        let mut acc = QPolynomial::zero();
        for (r, v) in row.iter().zip(&self.closing) {
            acc = &acc + &(r * v);
        }
        Ok(MotClass::from_poly(acc))
    }
}

fn p(coeffs: &[i64]) -> QPolynomial {
    QPolynomial::from_int_coeffs(coeffs)
}

/// The branching matrix of GL2 in the basis `[D], [J], [C], [X]`, with its
/// weight and closing vectors.
pub fn gl2_branching_system() -> BranchingSystem {
    let zero = QPolynomial::zero;
    BranchingSystem {
        states: vec![
            String::from("D"),
            String::from("J"),
            String::from("C"),
            String::from("X"),
        ],
        matrix: vec![
            vec![p(&[-1, 1]), zero(), zero(), zero()],
            vec![p(&[-1, 1]), p(&[0, -1, 1]), zero(), zero()],
            vec![
                &p(&[0, -1, 1]) * &p(&[-1, 1]),
                zero(),
                p(&[-1, 0, 1]),
                zero(),
            ],
            vec![
                &p(&[1, -1]) * &p(&[-1, 1]),
                zero(),
                p(&[1, -1]),
                &p(&[-1, 1]) * &p(&[-1, 1]),
            ],
        ],
        weights: vec![
            p(&[-1, 1]),
            &p(&[-1, 1]) * &p(&[-1, 0, 1]),
            p(&[0, 0, 1]),
            p(&[0, 1, 1]),
        ],
        closing: vec![p(&[1]), p(&[1]), p(&[0, -1, 1]), p(&[1, -1])],
    }
}

/// The GL2 strata and plus/minus part classes feeding the branching matrix.
#[derive(Clone, Debug)]
pub struct Gl2StrataData {
    pub scalar_class: QPolynomial,
    pub j_class: QPolynomial,
    pub m_class: QPolynomial,
    /// `[GL2]^+ = q^2` (also the base `C`) and `[GL2]^- = q`.
    pub gl2_plus: QPolynomial,
    pub gl2_minus: QPolynomial,
    /// Distinct nonzero eigenvalue pairs, `+` and `-` parts.
    pub distinct_pairs_plus: QPolynomial,
    pub distinct_pairs_minus: QPolynomial,
    /// All nonzero eigenvalue pairs, `+` and `-` parts.
    pub nonzero_pairs_plus: QPolynomial,
    pub nonzero_pairs_minus: QPolynomial,
    pub c_class: QPolynomial,
    pub x_class: QPolynomial,
}

pub fn gl2_strata() -> Gl2StrataData {
    Gl2StrataData {
        scalar_class: p(&[-1, 1]),
        j_class: &p(&[-1, 1]) * &p(&[-1, 0, 1]),
        m_class: &p(&[0, -1, 1]) * &p(&[-1, -1, 1]),
        gl2_plus: p(&[0, 0, 1]),
        gl2_minus: p(&[0, 1]),
        distinct_pairs_plus: p(&[1, -2, 1]),
        distinct_pairs_minus: p(&[1, -1]),
        nonzero_pairs_plus: p(&[0, -1, 1]),
        nonzero_pairs_minus: p(&[1, -1]),
        c_class: p(&[0, 0, 1]),
        x_class: p(&[0, 1, 1]),
    }
}

impl Gl2StrataData {
    /// The three stratum identities: strata sum to `[GL2]`, the `M` stratum
    /// is the stated combination of `[C]` and `[X]`, and the fiber product
    /// identity `[X x_C X] = 2[X]`.
    pub fn validate(&self) -> Result<(), Error> {
        let gl2 = &(&p(&[0, 1]) * &p(&[-1, 1])) * &p(&[-1, 0, 1]);
        let total = &(&self.scalar_class + &self.j_class) + &self.m_class;
        if total != gl2 {
            return Err(Error::InvariantViolated(String::from(
                "strata do not sum to [GL2]",
            )));
        }
        let recombined = &(&self.c_class * &p(&[0, -1, 1])) + &(&self.x_class * &p(&[1, -1]));
        if recombined != self.m_class {
            return Err(Error::InvariantViolated(String::from(
                "[M] != [C](q^2-q) + [X](1-q)",
            )));
        }
        let doubled = self.x_class.scale(&Rat::from_integer(Int::from(2)));
        if doubled != p(&[0, 2, 2]) {
            return Err(Error::InvariantViolated(String::from(
                "[X x_C X] != 2q^2 + 2q",
            )));
        }
        Ok(())
    }
}

/// Closed form for the class of commuting n-tuples in GL2:
/// `(1/2) q (q^2-1) (2(q^2-q)^(n-1) - 2(q-1)^(n-1) + (q-1)(q^2-1)^(n-1)
/// + (q-1)^(2n-1))`. Integer coefficients despite the global half.
pub fn gl2_closed_form(n: u32) -> MotClass {
    assert!(n >= 1, "n must be positive");
    let two = Rat::from_integer(Int::from(2));
    let inner = &(&(&p(&[0, -1, 1]).pow(n - 1).scale(&two) - &p(&[-1, 1]).pow(n - 1).scale(&two))
        + &(&p(&[-1, 1]) * &p(&[-1, 0, 1]).pow(n - 1)))
        + &p(&[-1, 1]).pow(2 * n - 1);
    let outer = &p(&[0, 1]) * &p(&[-1, 0, 1]);
    MotClass::from_poly((&outer * &inner).scale(&Rat::new(Int::from(1), Int::from(2))))
}

/// The virtual class of the space of conjugacy classes of GL_r: the sum
/// over partitions of `r` of `prod_(l: n_l > 0) (q^(n_l) - q^(n_l - 1))`,
/// `n_l` the multiplicity of part `l`.
pub fn census_glr(r: u32) -> Result<MotClass, Error> {
    if !(1..=CENSUS_BUDGET).contains(&r) {
        return Err(Error::BudgetExceeded(alloc::format!(
            "census supported for 1 <= r <= {CENSUS_BUDGET}, got {r}"
        )));
    }
    let mut total = QPolynomial::zero();
    for partition in partitions(r)? {
        let mut term = QPolynomial::one();
        for &m in partition.multiplicities().iter().filter(|&&m| m > 0) {
            // q^m - q^(m-1)
            let factor = &QPolynomial::monomial(m as usize, Rat::one())
                - &QPolynomial::monomial(m as usize - 1, Rat::one());
            term = &term * &factor;
        }
        total = &total + &term;
    }
    Ok(MotClass::from_poly(total))
}

/// `[C_2(GL_r)] = [GL_r] * [census]`.
pub fn c2_glr_class(r: u32) -> Result<MotClass, Error> {
    Ok(&crate::catalog::gl_class(r) * &census_glr(r)?)
}

/// Stabilization scan of `r -> census(r) / q^r`; the limit is the constant
/// series 1.
pub fn census_limit_report(r_max: u32, precision: i64) -> Result<LimitReport, Error> {
    if r_max > CENSUS_BUDGET {
        return Err(Error::BudgetExceeded(alloc::format!(
            "r_maxExceeds {CENSUS_BUDGET}"
        )));
    }
    let seq = MotSequence::new("census(GL_r)/q^r", |r| {
        &census_glr(r).expect("r within budget") * &MotClass::inv_q_pow(r)
    });
    Ok(limit_detect(&seq, precision, 3, 1, r_max))
}

/// Stabilization scan of `r -> [C_2(GL_r)] / (q^r [GL_r])`; converges to
/// the constant series 1.
pub fn rank_stability_report(r_max: u32, precision: i64) -> Result<LimitReport, Error> {
    if r_max > CENSUS_BUDGET {
        return Err(Error::BudgetExceeded(alloc::format!(
            "r_max exceeds {CENSUS_BUDGET}"
        )));
    }
    let seq = MotSequence::new("[C_2(GL_r)]/(q^r [GL_r])", |r| {
        let inv_gl = crate::catalog::gl_class(r)
            .try_inverse()
            .expect("[GL_r] is a unit");
        &(&c2_glr_class(r).expect("r within budget") * &inv_gl) * &MotClass::inv_q_pow(r)
    });
    Ok(limit_detect(&seq, precision, 3, 1, r_max))
}

/// One data point of the SL2 conjugacy census comparison.
#[derive(Clone, Debug)]
pub struct Sl2CensusPoint {
    pub p: u64,
    pub group_order: u64,
    pub conjugacy_classes: u64,
    pub commuting_pairs: Int,
    pub candidate_value: Rat,
    pub matches: bool,
}

/// Oracle-level census data for SL2 over small odd fields, compared against
/// a user-supplied candidate polynomial (the engine does not guess the
/// general SL_r census closed form). Exploratory by design.
#[derive(Clone, Debug)]
pub struct Sl2CensusReport {
    pub points: Vec<Sl2CensusPoint>,
    pub candidate: QPolynomial,
    pub all_match: bool,
    pub note: String,
}

/// Compares conjugacy-class counts of SL2(F_p) for odd `p <= 7` with the
/// candidate census polynomial evaluated at `p`.
pub fn sl2_commuting_ratio_check(candidate: &QPolynomial) -> Result<Sl2CensusReport, Error> {
    let mut points = Vec::new();
    for p in [3u64, 5, 7] {
        let group = oracle::enumerate(GroupId::Sl2, p)?;
        let classes = oracle::count_conjugacy_classes(&group) as u64;
        let pairs = oracle::count_commuting_tuples(&group, 2)?;
        let value = candidate.eval(&Rat::from_integer(Int::from(p)));
        points.push(Sl2CensusPoint {
            p,
            group_order: group.order() as u64,
            conjugacy_classes: classes,
            commuting_pairs: pairs,
            candidate_value: value.clone(),
            matches: value == Rat::from_integer(Int::from(classes)),
        });
    }
    let all_match = points.iter().all(|pt| pt.matches);
    Ok(Sl2CensusReport {
        points,
        candidate: candidate.clone(),
        all_match,
        note: String::from("exploratory: oracle data only, no closed-form SL_r census is asserted"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::gl_class;
    use crate::series::term_vec;

    #[test]
    fn system_shape() {
        let sys = gl2_branching_system();
        sys.validate().unwrap();
        assert_eq!(sys.states, ["D", "J", "C", "X"]);
        // matrix entry (3,1) in 1-based terms: (q^2-q)(q-1)
        assert_eq!(sys.matrix[2][0], &p(&[0, -1, 1]) * &p(&[-1, 1]));
        // n = 1 must give [GL2]
        assert_eq!(sys.commuting_class(1).unwrap(), gl_class(2));
    }

    #[test]
    fn strata_identities() {
        gl2_strata().validate().unwrap();
        // the two printed forms of the M class agree
        let bullet = &p(&[-1, 1]) * &p(&[0, -1, -1, 1]); // (q-1)(q^3-q^2-q)
        assert_eq!(bullet, gl2_strata().m_class);
    }

    #[test]
    fn closed_form_small_cases() {
        assert_eq!(gl2_closed_form(1), gl_class(2));
        // n = 2: q(q-1)(q^2-1)^2
        let expected = &(&p(&[0, 1]) * &p(&[-1, 1])) * &p(&[-1, 0, 1]).pow(2);
        assert_eq!(gl2_closed_form(2), MotClass::from_poly(expected));
        assert_eq!(gl2_closed_form(4).dimension().unwrap(), 10);
    }

    #[test]
    fn branching_equals_closed_form() {
        let sys = gl2_branching_system();
        for n in 1..=10 {
            let a = sys.commuting_class(n).unwrap();
            let b = gl2_closed_form(n);
            assert_eq!(a, b, "n = {n}");
            let poly = b.as_poly().unwrap();
            assert!(poly.has_integer_coeffs(), "n = {n}");
            assert!(poly.is_monic(), "n = {n}");
            assert_eq!(poly.degree(), Some(2 * n as usize + 2), "n = {n}");
        }
    }

    #[test]
    fn census_small_ranks() {
        assert_eq!(census_glr(2).unwrap(), MotClass::from_poly(p(&[-1, 0, 1])));
        assert_eq!(
            census_glr(3).unwrap(),
            MotClass::from_poly(p(&[0, -1, 0, 1]))
        );
        assert_eq!(
            census_glr(4).unwrap(),
            MotClass::from_poly(p(&[0, -1, 0, 0, 1]))
        );
        // the three rank-2 strata: (q-1) + (q-1) + (q-1)^2 = q^2 - 1
        let strata_sum = &(&p(&[-1, 1]) + &p(&[-1, 1])) + &(&p(&[-1, 1]) * &p(&[-1, 1]));
        assert_eq!(census_glr(2).unwrap(), MotClass::from_poly(strata_sum));
        assert!(census_glr(41).is_err());
    }

    #[test]
    fn census_expansions() {
        let r3 = (&census_glr(3).unwrap() * &MotClass::inv_q_pow(3)).expand(10);
        assert_eq!(
            term_vec(&r3),
            alloc::vec![(0, Rat::one()), (2, -Rat::one())]
        );
        let r4 = (&census_glr(4).unwrap() * &MotClass::inv_q_pow(4)).expand(10);
        assert_eq!(
            term_vec(&r4),
            alloc::vec![(0, Rat::one()), (3, -Rat::one())]
        );
    }

    #[test]
    fn c2_equals_closed_form_at_rank_two() {
        assert_eq!(c2_glr_class(2).unwrap(), gl2_closed_form(2));
    }

    #[test]
    fn census_stabilizes_to_one() {
        let report = census_limit_report(24, 10).unwrap();
        assert!(report.converged);
        assert_eq!(report.limit.unwrap(), MotClass::one().expand(10));
        // the second-highest census term sits near degree r/2, so precision
        // 10 stabilizes exactly from rank 20
        assert_eq!(report.stabilization_index, Some(20));
    }

    #[test]
    fn rank_stability_converges_to_one() {
        let report = rank_stability_report(24, 10).unwrap();
        assert!(report.converged);
        assert_eq!(report.limit.unwrap(), MotClass::one().expand(10));
    }

    #[test]
    fn sl2_census_data() {
        let candidate = p(&[4, 1]); // q + 4 for odd q
        let report = sl2_commuting_ratio_check(&candidate).unwrap();
        assert!(report.all_match);
        let classes: Vec<u64> = report
            .points
            .iter()
            .map(|pt| pt.conjugacy_classes)
            .collect();
        assert_eq!(classes, [7, 9, 11]);
        assert_eq!(report.points[0].commuting_pairs, Int::from(168));
    }
}
