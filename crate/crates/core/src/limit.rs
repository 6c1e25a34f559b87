//! Motivic stability detection: coefficientwise stabilization of series
//! expansions for sequences of virtual classes.
//!
//! The primary detector looks for a window of consecutive indices whose
//! expansions at the requested precision are identical. A second tier covers
//! sequences whose expansions never coincide exactly but whose successive
//! differences shrink by one fixed rational ratio `|rho| < 1`; the limit is
//! then the exact geometric extrapolation. Either way the result is reported
//! as evidence, not proof.

use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::motclass::MotClass;
use crate::series::LaurentSeries;
use crate::Rat;

/// A deterministic family `n -> class`, the object limits are taken over.
pub struct MotSequence {
    label: String,
    gen: Box<dyn Fn(u32) -> MotClass + Send + Sync>,
}

impl MotSequence {
    pub fn new(
        label: impl Into<String>,
        gen: impl Fn(u32) -> MotClass + Send + Sync + 'static,
    ) -> Self {
        MotSequence {
            label: label.into(),
            gen: Box::new(gen),
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn class_at(&self, n: u32) -> MotClass {
        (self.gen)(n)
    }
}

/// How convergence was detected.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Detection {
    /// The final `window` expansions are identical.
    ExactWindow,
    /// Successive differences form an exact geometric tail with `|rho| < 1`.
    GeometricTail,
}

/// Outcome of a stabilization scan.
#[derive(Clone, Debug)]
pub struct LimitReport {
    pub converged: bool,
    /// The detected limit expansion, when converged.
    pub limit: Option<LaurentSeries>,
    /// First index from which every computed expansion matches the limit
    /// (or fits the geometric model).
    pub stabilization_index: Option<u32>,
    pub precision: i64,
    pub window: u32,
    pub detection: Option<Detection>,
}

impl LimitReport {
    fn diverged(precision: i64, window: u32) -> Self {
        LimitReport {
            converged: false,
            limit: None,
            stabilization_index: None,
            precision,
            window,
            detection: None,
        }
    }
}

/// Default scan parameters: precision 10, window 3, indices 1..=40.
pub const DEFAULT_PRECISION: i64 = 10;
pub const DEFAULT_WINDOW: u32 = 3;
pub const DEFAULT_N_START: u32 = 1;
pub const DEFAULT_N_MAX: u32 = 40;

/// Scans `seq` over `n_start..=n_max`, expanding each class to precision
/// `precision`, and reports stabilization. Requires `window >= 2` and
/// `n_max >= n_start + window`.
pub fn limit_detect(
    seq: &MotSequence,
    precision: i64,
    window: u32,
    n_start: u32,
    n_max: u32,
) -> LimitReport {
    assert!(window >= 2, "window must be at least 2");
    assert!(
        n_start >= 1 && n_max >= n_start + window,
        "index budget too small"
    );
    let indices: Vec<u32> = (n_start..=n_max).collect();
    let expansions: Vec<LaurentSeries> = indices
        .iter()
        .map(|&n| seq.class_at(n).expand(precision))
        .collect();

    // Tier 1: identical tail. Anchoring at the end makes the reported limit
    // agree with the final `window` terms by construction.
    let last = expansions.last().unwrap();
    let mut run_start = expansions.len() - 1;
    while run_start > 0 && expansions[run_start - 1] == *last {
        run_start -= 1;
    }
    let run_len = expansions.len() - run_start;
    if run_len >= window as usize {
        return LimitReport {
            converged: true,
            limit: Some(last.clone()),
            stabilization_index: Some(indices[run_start]),
            precision,
            window,
            detection: Some(Detection::ExactWindow),
        };
    }

    // Tier 2: exact geometric tail. Needs at least three differences.
    let need = (window as usize + 1).max(4);
    if expansions.len() >= need {
        if let Some(report) = geometric_tail(&indices, &expansions, precision, window) {
            return report;
        }
    }

    LimitReport::diverged(precision, window)
}

/// Runs the scan with the default parameters.
pub fn limit_detect_default(seq: &MotSequence) -> LimitReport {
    limit_detect(
        seq,
        DEFAULT_PRECISION,
        DEFAULT_WINDOW,
        DEFAULT_N_START,
        DEFAULT_N_MAX,
    )
}

fn geometric_tail(
    indices: &[u32],
    expansions: &[LaurentSeries],
    precision: i64,
    window: u32,
) -> Option<LimitReport> {
    let diffs: Vec<LaurentSeries> = expansions.windows(2).map(|w| w[1].sub(&w[0])).collect();
    if diffs.iter().any(|d| d.is_zero_through_precision()) {
        return None;
    }
    // Ratio of the first two differences, read off the leading coefficients.
    let rho = {
        let (e0, c0) = diffs[0].terms().next()?;
        let c1 = diffs[1].coeff(e0);
        if c1.is_zero() || c0.is_zero() {
            return None;
        }
        &c1 / c0
    };
    if rho.abs() >= Rat::one() {
        return None;
    }
    // Every consecutive difference must scale by exactly rho.
    for w in diffs.windows(2) {
        if w[1] != w[0].scale(&rho) {
            return None;
        }
    }
    // s(infinity) = s(n_max) + d_last * rho / (1 - rho), exactly.
    let last = expansions.last().unwrap();
    let d_last = diffs.last().unwrap();
    let tail_sum = &rho / (Rat::one() - &rho);
    let limit = last.add(&d_last.scale(&tail_sum));
    Some(LimitReport {
        converged: true,
        limit: Some(limit),
        stabilization_index: Some(indices[0]),
        precision,
        window,
        detection: Some(Detection::GeometricTail),
    })
}
