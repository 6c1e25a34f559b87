//! Truncated Laurent series in `u = 1/q`, the computational form of elements
//! of the completed ring.
//!
//! A series carries an explicit precision: `Trunc(N)` means every coefficient
//! at exponents `<= N` is exact and nothing is known above, while `Exact`
//! marks finitely supported series known everywhere (e.g. the zero series).
//! Arithmetic propagates precision; in particular a truncated series with all
//! stored coefficients zero is distinct from the exact zero series.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;

use crate::poly::write_term;
use crate::{Int, Rat};

/// Exactness marker for a Laurent series.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Precision {
    /// All coefficients known (finitely supported).
    Exact,
    /// Coefficients at exponents `<= N` are exact.
    Trunc(i64),
}

impl Precision {
    fn min(self, other: Precision) -> Precision {
        match (self, other) {
            (Precision::Exact, p) | (p, Precision::Exact) => p,
            (Precision::Trunc(a), Precision::Trunc(b)) => Precision::Trunc(a.min(b)),
        }
    }
}

/// Sparse Laurent series in `u = 1/q` with precision tracking. Negative
/// exponents are positive powers of `q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentSeries {
    coeffs: BTreeMap<i64, Rat>,
    prec: Precision,
}

impl LaurentSeries {
    /// The exact zero series.
    pub fn zero() -> Self {
        LaurentSeries {
            coeffs: BTreeMap::new(),
            prec: Precision::Exact,
        }
    }

    /// The exact constant series `1`.
    pub fn one() -> Self {
        Self::monomial(0, Rat::from_integer(Int::from(1)))
    }

    /// Exact single-term series `c * u^exp`.
    pub fn monomial(exp: i64, c: Rat) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(exp, c);
        }
        LaurentSeries {
            coeffs,
            prec: Precision::Exact,
        }
    }

    /// Exact finitely-supported series from `(exponent, coefficient)` pairs.
    pub fn from_terms(terms: impl IntoIterator<Item = (i64, Rat)>) -> Self {
        let mut coeffs = BTreeMap::new();
        for (e, c) in terms {
            if !c.is_zero() {
                let entry = coeffs.entry(e).or_insert_with(Rat::zero);
                *entry = &*entry + &c;
            }
        }
        coeffs.retain(|_, c| !c.is_zero());
        LaurentSeries {
            coeffs,
            prec: Precision::Exact,
        }
    }

    /// The truncated geometric series `u^b + u^(2b) + ...` through exponent `n`,
    /// the expansion of `1/(q^b - 1)`.
    pub fn geometric(b: u32, n: i64) -> Self {
        let mut coeffs = BTreeMap::new();
        let mut e = b as i64;
        while e <= n {
            coeffs.insert(e, Rat::from_integer(Int::from(1)));
            e += b as i64;
        }
        LaurentSeries {
            coeffs,
            prec: Precision::Trunc(n),
        }
    }

    pub fn precision(&self) -> Precision {
        self.prec
    }

    /// True when nothing nonzero is stored (exact zero only if also `Exact`).
    pub fn is_zero_through_precision(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_exact_zero(&self) -> bool {
        self.coeffs.is_empty() && self.prec == Precision::Exact
    }

    /// Smallest exponent with a nonzero stored coefficient.
    pub fn min_exponent(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn coeff(&self, e: i64) -> Rat {
        self.coeffs.get(&e).cloned().unwrap_or_else(Rat::zero)
    }

    /// Nonzero terms in increasing exponent.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rat)> {
        self.coeffs.iter().map(|(&e, c)| (e, c))
    }

    /// First exponent at which the coefficient could be nonzero or unknown;
    /// used for precision bookkeeping in products.
    fn support_floor(&self) -> Option<i64> {
        match (self.min_exponent(), self.prec) {
            (Some(m), _) => Some(m),
            (None, Precision::Trunc(n)) => Some(n + 1),
            (None, Precision::Exact) => None, // exact zero
        }
    }

    /// Drops knowledge above exponent `n`.
    pub fn truncate(&self, n: i64) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .filter(|(&e, _)| e <= n)
            .map(|(&e, c)| (e, c.clone()))
            .collect();
        LaurentSeries {
            coeffs,
            prec: self.prec.min(Precision::Trunc(n)),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let prec = self.prec.min(other.prec);
        let mut coeffs = self.coeffs.clone();
        for (&e, c) in &other.coeffs {
            let entry = coeffs.entry(e).or_insert_with(Rat::zero);
            *entry = &*entry + c;
        }
        coeffs.retain(|_, c| !c.is_zero());
        LaurentSeries { coeffs, prec }.clamp()
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        LaurentSeries {
            coeffs: self.coeffs.iter().map(|(&e, c)| (e, -c)).collect(),
            prec: self.prec,
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return LaurentSeries {
                coeffs: BTreeMap::new(),
                prec: self.prec,
            };
        }
        LaurentSeries {
            coeffs: self.coeffs.iter().map(|(&e, a)| (e, a * c)).collect(),
            prec: self.prec,
        }
    }

    /// Multiplies by `u^k`.
    pub fn shift(&self, k: i64) -> Self {
        let prec = match self.prec {
            Precision::Exact => Precision::Exact,
            Precision::Trunc(n) => Precision::Trunc(n + k),
        };
        LaurentSeries {
            coeffs: self
                .coeffs
                .iter()
                .map(|(&e, c)| (e + k, c.clone()))
                .collect(),
            prec,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        // Exact zero annihilates regardless of the other side's precision.
        if self.is_exact_zero() || other.is_exact_zero() {
            return Self::zero();
        }
        let prec = match (
            self.prec,
            other.prec,
            self.support_floor(),
            other.support_floor(),
        ) {
            (Precision::Exact, Precision::Exact, _, _) => Precision::Exact,
            (Precision::Trunc(n1), Precision::Exact, _, Some(m2)) => Precision::Trunc(n1 + m2),
            (Precision::Exact, Precision::Trunc(n2), Some(m1), _) => Precision::Trunc(n2 + m1),
            (Precision::Trunc(n1), Precision::Trunc(n2), Some(m1), Some(m2)) => {
                Precision::Trunc((n1 + m2).min(n2 + m1))
            }
            _ => unreachable!("non-exact-zero series have a support floor"),
        };
        let mut coeffs: BTreeMap<i64, Rat> = BTreeMap::new();
        for (&e1, c1) in &self.coeffs {
            for (&e2, c2) in &other.coeffs {
                let e = e1 + e2;
                if let Precision::Trunc(n) = prec {
                    if e > n {
                        continue;
                    }
                }
                let entry = coeffs.entry(e).or_insert_with(Rat::zero);
                *entry = &*entry + &(c1 * c2);
            }
        }
        coeffs.retain(|_, c| !c.is_zero());
        LaurentSeries { coeffs, prec }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Drops stored terms above the precision bound (no information loss).
    fn clamp(self) -> Self {
        match self.prec {
            Precision::Exact => self,
            Precision::Trunc(n) => self.truncate(n),
        }
    }
}

impl fmt::Display for LaurentSeries {
    /// Encoding `c0 + c1*u + ... + O(u^{N+1})`, `u` documented as `q^{-1}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            match self.prec {
                Precision::Exact => return write!(f, "0"),
                Precision::Trunc(n) => return write!(f, "0 + O(u^{})", n + 1),
            }
        }
        let mut first = true;
        for (e, c) in self.terms() {
            if e >= 0 {
                write_term(f, first, c, "u", e as usize)?;
            } else {
                // negative exponents (positive powers of q) keep the explicit sign style
                let neg = c < &Rat::zero();
                let abs = if neg { -c } else { c.clone() };
                if first {
                    if neg {
                        write!(f, "-")?;
                    }
                } else if neg {
                    write!(f, " - ")?;
                } else {
                    write!(f, " + ")?;
                }
                use num_traits::One;
                if abs.is_one() {
                    write!(f, "u^{e}")?;
                } else if abs.is_integer() {
                    write!(f, "{abs}u^{e}")?;
                } else {
                    write!(f, "({abs})u^{e}")?;
                }
            }
            first = false;
        }
        if let Precision::Trunc(n) = self.prec {
            write!(f, " + O(u^{})", n + 1)?;
        }
        Ok(())
    }
}

/// Collects the nonzero terms into a vector, mainly for tests.
pub fn term_vec(s: &LaurentSeries) -> Vec<(i64, Rat)> {
    s.terms().map(|(e, c)| (e, c.clone())).collect()
}
