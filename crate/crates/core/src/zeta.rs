//! Kapranov motivic zeta functions of polynomial classes, symmetric powers,
//! and stability limits of symmetric-power sequences.
//!
//! For a class `sum a_i q^i` the zeta function is the product
//! `prod_i (1 - q^i t)^(-a_i)`; its `t^n` coefficient is the class of the
//! n-th symmetric power. Negative `a_i` are allowed throughout ([GL_2]
//! itself has negative coefficients).

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, ToPrimitive};

use crate::error::Error;
use crate::motclass::MotClass;
use crate::poly::QPolynomial;
use crate::{Int, Rat};

/// The factored zeta function `prod_i (1 - q^i t)^(-a_i)`, `i` strictly
/// increasing and every stored `a_i` nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZetaProduct {
    factors: Vec<(u32, i64)>,
}

impl ZetaProduct {
    /// Builds a product from `(i, a_i)` factors; merges repeats, drops zero
    /// exponents, sorts by `i`.
    pub fn new(factors: impl IntoIterator<Item = (u32, i64)>) -> ZetaProduct {
        let mut merged: Vec<(u32, i64)> = Vec::new();
        for (i, a) in factors {
            match merged.iter_mut().find(|(fi, _)| *fi == i) {
                Some((_, fa)) => *fa += a,
                None => merged.push((i, a)),
            }
        }
        merged.retain(|&(_, a)| a != 0);
        merged.sort_unstable_by_key(|&(i, _)| i);
        ZetaProduct { factors: merged }
    }

    pub fn factors(&self) -> &[(u32, i64)] {
        &self.factors
    }

    /// The `t^n` coefficient of the expanded product: the class of the n-th
    /// symmetric power, a polynomial in `q`.
    pub fn sym_coefficient(&self, n: usize) -> QPolynomial {
        // series in t, truncated at t^n, with polynomial coefficients
        let mut series: Vec<QPolynomial> = vec![QPolynomial::zero(); n + 1];
        series[0] = QPolynomial::one();
        for &(i, a) in &self.factors {
            let factor = factor_series(i, a, n);
            series = mul_truncated(&series, &factor, n);
        }
        series.swap_remove(n)
    }

    /// Evaluates the product at `t = q^(-d)` as a class of the localization:
    /// each factor becomes `(q^(d-i) / (q^(d-i) - 1))^(a_i)`. Requires
    /// `i < d` for every stored factor.
    pub fn eval_at_q_inverse_pow(&self, d: u32) -> Result<MotClass, Error> {
        let mut acc = MotClass::one();
        for &(i, a) in &self.factors {
            if i >= d {
                return Err(Error::PreconditionViolated(alloc::format!(
                    "zeta factor exponent {i} must be smaller than {d}"
                )));
            }
            let b = d - i;
            let base = MotClass::new(
                QPolynomial::monomial(b as usize, Rat::one()),
                0,
                vec![(b, 1)],
            );
            let powered = if a >= 0 {
                base.pow(a as u32)
            } else {
                base.try_inverse()
                    .expect("q^b/(q^b-1) is a unit")
                    .pow((-a) as u32)
            };
            acc = &acc * &powered;
        }
        Ok(acc)
    }
}

impl fmt::Display for ZetaProduct {
    /// Encoding `(1-t)^{-a0} (1-q t)^{-a1} ...` with zero exponents omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for &(i, a) in &self.factors {
            if !first {
                write!(f, " ")?;
            }
            match i {
                0 => write!(f, "(1-t)")?,
                1 => write!(f, "(1-q t)")?,
                _ => write!(f, "(1-q^{i} t)")?,
            }
            write!(f, "^{{{}}}", -a)?;
            first = false;
        }
        Ok(())
    }
}

/// Series of `(1 - q^i t)^(-a)` in `t` through `t^n`.
fn factor_series(i: u32, a: i64, n: usize) -> Vec<QPolynomial> {
    let mut out = Vec::with_capacity(n + 1);
    if a >= 0 {
        // coefficient of t^m is C(m + a - 1, m) q^(i m)
        for m in 0..=n {
            let c = binom(m as u64 + a as u64 - 1, m as u64);
            out.push(QPolynomial::monomial(i as usize * m, Rat::from_integer(c)));
        }
    } else {
        // finite expansion of (1 - q^i t)^(-a) = (1 - q^i t)^{|a|}
        let k = (-a) as u64;
        for m in 0..=n {
            if (m as u64) > k {
                out.push(QPolynomial::zero());
            } else {
                let mut c = binom(k, m as u64);
                if m % 2 == 1 {
                    c = -c;
                }
                out.push(QPolynomial::monomial(i as usize * m, Rat::from_integer(c)));
            }
        }
    }
    out
}

fn mul_truncated(a: &[QPolynomial], b: &[QPolynomial], n: usize) -> Vec<QPolynomial> {
    let mut out = vec![QPolynomial::zero(); n + 1];
    for (i, pa) in a.iter().enumerate() {
        if pa.is_zero() {
            continue;
        }
        for (j, pb) in b.iter().enumerate() {
            if i + j > n {
                break;
            }
            if pb.is_zero() {
                continue;
            }
            out[i + j] = &out[i + j] + &(pa * pb);
        }
    }
    out
}

fn binom(n: u64, k: u64) -> Int {
    if k > n {
        return Int::from(0);
    }
    let k = k.min(n - k);
    let mut num = Int::from(1);
    let mut den = Int::from(1);
    for j in 0..k {
        num *= Int::from(n - j);
        den *= Int::from(j + 1);
    }
    num / den
}

/// Guard for the zeta operations: the numerator of a denominator-free class.
pub fn as_poly(a: &MotClass) -> Result<QPolynomial, Error> {
    a.as_poly()
}

/// Reads the factored zeta function off the coefficients of `p`.
pub fn kapranov_zeta(p: &QPolynomial) -> Result<ZetaProduct, Error> {
    if !p.has_integer_coeffs() {
        return Err(Error::NonIntegerCoefficients);
    }
    let mut factors = Vec::new();
    for (i, c) in p.terms() {
        let a = c
            .to_integer()
            .to_i64()
            .ok_or(Error::NonIntegerCoefficients)?;
        if a != 0 {
            factors.push((i as u32, a));
        }
    }
    Ok(ZetaProduct { factors })
}

/// The class of the n-th symmetric power of a polynomial class.
pub fn sym_power(p: &QPolynomial, n: usize) -> Result<QPolynomial, Error> {
    Ok(kapranov_zeta(p)?.sym_coefficient(n))
}

/// The limit `lim Sym^n(p) / q^(n s)` for monic `p` of degree `s`:
/// `prod_{i<s} (q^(s-i) / (q^(s-i) - 1))^(a_i)`. Fails with `NotStable`
/// when the leading coefficient is not 1.
pub fn sym_limit(p: &QPolynomial) -> Result<MotClass, Error> {
    if !p.is_monic() {
        return Err(Error::NotStable);
    }
    let z = kapranov_zeta(p)?;
    let s = p.degree().unwrap() as u32;
    let truncated = ZetaProduct {
        factors: z
            .factors()
            .iter()
            .copied()
            .filter(|&(i, _)| i < s)
            .collect(),
    };
    truncated.eval_at_q_inverse_pow(s)
}

/// Open-closed decomposition check: for `x = u + z` monic with
/// `deg z < deg x`, verifies `sym_limit(x) = Z_z(q^(-deg x)) * sym_limit(u)`
/// as exact class equality.
pub fn open_closed_limit_check(u: &QPolynomial, z: &QPolynomial) -> Result<bool, Error> {
    let x = u + z;
    let dx = x.degree().ok_or(Error::NotStable)?;
    if z.degree().is_some_and(|dz| dz >= dx) {
        return Err(Error::PreconditionViolated(alloc::format!(
            "closed part has degree >= {dx}"
        )));
    }
    let lhs = sym_limit(&x)?;
    let zeta_z = kapranov_zeta(z)?.eval_at_q_inverse_pow(dx as u32)?;
    let rhs = &zeta_z * &sym_limit(u)?;
    Ok(lhs == rhs)
}
