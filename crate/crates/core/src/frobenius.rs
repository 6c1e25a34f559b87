//! Character-theoretic counting of surface-group homomorphisms into finite
//! groups: `#Hom = #G sum_chi (#G / chi(1))^(2g-2)`, and the genus limit
//! `1 / #[G,G]` of the normalized count.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::error::Error;
use crate::oracle::Permutation;
use crate::{Int, Rat};

/// Order, irreducible character degrees, and commutator-subgroup order of a
/// finite group; optional permutation generators feed the oracle cross-check.
#[derive(Clone, Debug)]
pub struct FiniteGroupData {
    pub name: String,
    pub order: u64,
    pub char_degrees: Vec<u64>,
    pub commutator_order: u64,
    pub generators: Option<Vec<Permutation>>,
}

impl FiniteGroupData {
    pub fn new(
        name: impl Into<String>,
        order: u64,
        char_degrees: Vec<u64>,
        commutator_order: u64,
    ) -> Self {
        let mut char_degrees = char_degrees;
        char_degrees.sort_unstable();
        FiniteGroupData {
            name: name.into(),
            order,
            char_degrees,
            commutator_order,
            generators: None,
        }
    }

    pub fn with_generators(mut self, generators: Vec<Permutation>) -> Self {
        self.generators = Some(generators);
        self
    }

    /// Checks the two structural identities: the degrees square-sum to the
    /// order, and the degree-1 characters number `order / commutator_order`.
    pub fn validate(&self) -> Result<(), Error> {
        if self.order == 0
            || self.commutator_order == 0
            || !self.order.is_multiple_of(self.commutator_order)
        {
            return Err(Error::InvariantViolated(alloc::format!(
                "commutator order {} must divide the group order {}",
                self.commutator_order,
                self.order
            )));
        }
        let square_sum: u64 = self.char_degrees.iter().map(|d| d * d).sum();
        if square_sum != self.order {
            return Err(Error::InvariantViolated(alloc::format!(
                "character degrees square-sum to {square_sum}, not the order {}",
                self.order
            )));
        }
        let linear = self.char_degrees.iter().filter(|&&d| d == 1).count() as u64;
        if linear != self.order / self.commutator_order {
            return Err(Error::InvariantViolated(alloc::format!(
                "{linear} linear characters, expected {}",
                self.order / self.commutator_order
            )));
        }
        if self
            .char_degrees
            .iter()
            .any(|&d| !self.order.is_multiple_of(d))
        {
            return Err(Error::InvariantViolated(String::from(
                "every character degree must divide the group order",
            )));
        }
        Ok(())
    }
}

/// `#Hom(pi_1(M_g), G) = #G sum_chi (#G/chi(1))^(2g-2)`, an exact integer.
pub fn rep_count(group: &FiniteGroupData, genus: u32) -> Result<Int, Error> {
    if genus < 1 {
        return Err(Error::PreconditionViolated(String::from(
            "genus must be at least 1",
        )));
    }
    group.validate()?;
    let order = Int::from(group.order);
    let mut sum = Int::from(0);
    for &d in &group.char_degrees {
        sum += Int::from(group.order / d).pow(2 * genus - 2);
    }
    Ok(order * sum)
}

/// The normalized count sequence, its limit, and convergence bookkeeping.
#[derive(Clone, Debug)]
pub struct RatioReport {
    /// `(g, rep_count / order^(2g))` for `g = 1..=g_max`.
    pub ratios: Vec<(u32, Rat)>,
    /// `1 / #[G,G]`.
    pub limit: Rat,
    /// Per-genus shrink factor of the dropped part: `max 1/chi(1)^2` over
    /// nonlinear characters (`None` for abelian groups).
    pub rate_bound: Option<Rat>,
    /// The largest single dropped ratio term at `g_max`.
    pub largest_dropped: Rat,
    /// First genus with `|ratio - limit| < 10^-6`, if reached by `g_max`.
    pub converged_by: Option<u32>,
}

/// Tabulates `rep_count / order^(2g)` and the limit `1/commutator_order`.
pub fn rep_ratio_report(group: &FiniteGroupData, g_max: u32) -> Result<RatioReport, Error> {
    if g_max < 2 {
        return Err(Error::PreconditionViolated(String::from(
            "g_max must be at least 2",
        )));
    }
    group.validate()?;
    let limit = Rat::new(Int::from(1), Int::from(group.commutator_order));
    let tolerance = Rat::new(Int::from(1), Int::from(1_000_000));
    let mut ratios = Vec::with_capacity(g_max as usize);
    let mut converged_by = None;
    for g in 1..=g_max {
        let count = rep_count(group, g)?;
        let ratio = Rat::new(count, Int::from(group.order).pow(2 * g));
        if converged_by.is_none() && (&ratio - &limit).abs() < tolerance {
            converged_by = Some(g);
        }
        ratios.push((g, ratio));
    }
    let min_nonlinear = group.char_degrees.iter().copied().filter(|&d| d > 1).min();
    let rate_bound = min_nonlinear.map(|d| Rat::new(Int::from(1), Int::from(d * d)));
    // largest dropped term at g_max: (1/#G) (1/chi(1))^(2g-2) for the
    // smallest nonlinear degree
    let largest_dropped = match min_nonlinear {
        Some(d) => Rat::new(
            Int::from(1),
            Int::from(group.order) * Int::from(d).pow(2 * g_max - 2),
        ),
        None => Rat::zero(),
    };
    Ok(RatioReport {
        ratios,
        limit,
        rate_bound,
        largest_dropped,
        converged_by,
    })
}

/// Built-in groups: `S3`, `Z2`, `Z3`, `Zn(n)`, `D4`, `Q8`. Each carries
/// permutation generators for the oracle cross-check.
pub fn builtin(name: &str) -> Result<FiniteGroupData, Error> {
    let cycles = |specs: &[&str]| -> Vec<Permutation> {
        specs
            .iter()
            .map(|s| Permutation::parse_cycles(s).expect("builtin generator parses"))
            .collect()
    };
    let data = match name {
        "S3" => FiniteGroupData::new("S3", 6, vec![1, 1, 2], 3)
            .with_generators(cycles(&["(1 2)", "(1 2 3)"])),
        "Z2" => FiniteGroupData::new("Z2", 2, vec![1, 1], 1).with_generators(cycles(&["(1 2)"])),
        "Z3" => {
            FiniteGroupData::new("Z3", 3, vec![1, 1, 1], 1).with_generators(cycles(&["(1 2 3)"]))
        }
        "D4" => FiniteGroupData::new("D4", 8, vec![1, 1, 1, 1, 2], 2)
            .with_generators(cycles(&["(1 2 3 4)", "(1 3)"])),
        // the quaternions in their regular representation on {1,-1,i,-i,j,-j,k,-k}
        "Q8" => FiniteGroupData::new("Q8", 8, vec![1, 1, 1, 1, 2], 2)
            .with_generators(cycles(&["(1 3 2 4)(5 7 6 8)", "(1 5 2 6)(3 8 4 7)"])),
        other => {
            if let Some(rest) = other.strip_prefix("Zn(") {
                let n: u64 = rest
                    .strip_suffix(')')
                    .and_then(|v| v.parse().ok())
                    .ok_or_else(|| Error::UnknownGroup(String::from(other)))?;
                if n == 0 || n > 10_000 {
                    return Err(Error::BudgetExceeded(String::from("Zn order out of range")));
                }
                let mut data =
                    FiniteGroupData::new(alloc::format!("Z{n}"), n, vec![1; n as usize], 1);
                if n <= 255 {
                    let gen = Permutation::parse_cycles(&cycle_string(n as usize))
                        .expect("cycle string parses");
                    data = data.with_generators(vec![gen]);
                }
                data
            } else {
                return Err(Error::UnknownGroup(String::from(other)));
            }
        }
    };
    data.validate()?;
    Ok(data)
}

fn cycle_string(n: usize) -> String {
    use core::fmt::Write;
    let mut s = String::from("(");
    for i in 1..=n {
        if i > 1 {
            s.push(' ');
        }
        let _ = write!(s, "{i}");
    }
    s.push(')');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{count_surface_tuples, PermGroup};

    #[test]
    fn s3_counts() {
        let s3 = builtin("S3").unwrap();
        assert_eq!(rep_count(&s3, 1).unwrap(), Int::from(18));
        assert_eq!(rep_count(&s3, 2).unwrap(), Int::from(486));
    }

    #[test]
    fn abelian_counts() {
        let z2 = builtin("Z2").unwrap();
        for g in 1..=5 {
            assert_eq!(rep_count(&z2, g).unwrap(), Int::from(1u64 << (2 * g)));
        }
        let z4 = builtin("Zn(4)").unwrap();
        assert_eq!(z4.order, 4);
        assert_eq!(z4.commutator_order, 1);
        assert_eq!(rep_count(&z4, 2).unwrap(), Int::from(256));
    }

    #[test]
    fn ratio_limits() {
        let s3 = builtin("S3").unwrap();
        let report = rep_ratio_report(&s3, 12).unwrap();
        assert_eq!(report.limit, Rat::new(Int::from(1), Int::from(3)));
        assert_eq!(report.ratios[0].1, Rat::new(Int::from(1), Int::from(2)));
        assert_eq!(report.ratios[1].1, Rat::new(Int::from(3), Int::from(8)));
        assert!(report.converged_by.is_some());
        assert!(report.converged_by.unwrap() <= 12);
        assert_eq!(
            report.rate_bound.unwrap(),
            Rat::new(Int::from(1), Int::from(4))
        );

        let q8 = builtin("Q8").unwrap();
        assert_eq!(
            rep_ratio_report(&q8, 6).unwrap().limit,
            Rat::new(Int::from(1), Int::from(2))
        );
        let z3 = builtin("Z3").unwrap();
        assert_eq!(
            rep_ratio_report(&z3, 4).unwrap().limit,
            Rat::new(Int::from(1), Int::from(1))
        );
    }

    #[test]
    fn genus_one_count_is_order_times_class_count() {
        for name in ["S3", "Z2", "Z3", "D4", "Q8", "Zn(5)"] {
            let data = builtin(name).unwrap();
            assert_eq!(
                rep_count(&data, 1).unwrap(),
                Int::from(data.order) * Int::from(data.char_degrees.len() as u64),
                "{name}"
            );
        }
    }

    #[test]
    fn validation_catches_typos() {
        let bad = FiniteGroupData::new("bad", 6, vec![1, 1, 3], 3);
        assert!(bad.validate().is_err());
        let bad2 = FiniteGroupData::new("bad2", 6, vec![1, 1, 2], 2);
        assert!(bad2.validate().is_err());
    }

    #[test]
    fn builtin_generators_generate_the_stated_group() {
        for name in ["S3", "Z2", "Z3", "D4", "Q8", "Zn(6)"] {
            let data = builtin(name).unwrap();
            let group = PermGroup::generate(data.generators.as_ref().unwrap()).unwrap();
            assert_eq!(group.order() as u64, data.order, "{name}");
        }
    }

    #[test]
    fn frobenius_agrees_with_exhaustive_enumeration() {
        for name in ["S3", "Z2", "Z3", "D4", "Q8"] {
            let data = builtin(name).unwrap();
            let group = PermGroup::generate(data.generators.as_ref().unwrap()).unwrap();
            for g in 1..=2 {
                if (data.order as f64).powi(2 * g as i32) > 10_000_000.0 {
                    continue;
                }
                assert_eq!(
                    rep_count(&data, g).unwrap(),
                    count_surface_tuples(&group, g).unwrap(),
                    "{name}, genus {g}"
                );
            }
        }
    }
}
