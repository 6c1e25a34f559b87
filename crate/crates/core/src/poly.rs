//! Univariate polynomials in the Lefschetz class `q` with arbitrary-precision
//! rational coefficients.
//!
//! These house every polynomial virtual class in the engine, e.g.
//! `[GL_2] = q^4 - q^3 - q^2 + q`. The zero polynomial has no degree
//! (`degree()` returns `None`, the "negative infinity" sentinel).

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::{Int, Rat};

/// Dense polynomial in `q` over the rationals. Coefficient of `q^k` sits at
/// index `k`; no trailing zeros are stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct QPolynomial {
    coeffs: Vec<Rat>,
}

fn rat(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

impl QPolynomial {
    /// Builds a polynomial from coefficients in increasing degree, trimming
    /// trailing zeros.
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        QPolynomial { coeffs }
    }

    pub fn zero() -> Self {
        QPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(rat(1))
    }

    /// The class of the affine line, `q`.
    pub fn q() -> Self {
        Self::monomial(1, rat(1))
    }

    pub fn constant(c: Rat) -> Self {
        Self::new(vec![c])
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(rat(n))
    }

    /// `c * q^degree`.
    pub fn monomial(degree: usize, c: Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![rat(0); degree + 1];
        coeffs[degree] = c;
        QPolynomial { coeffs }
    }

    /// Convenience constructor from integer coefficients in increasing degree.
    pub fn from_int_coeffs(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    /// `q^b - 1`, the generators of the localized denominators.
    pub fn q_pow_minus_one(b: u32) -> Self {
        let mut coeffs = vec![rat(0); b as usize + 1];
        coeffs[0] = rat(-1);
        coeffs[b as usize] = rat(1);
        QPolynomial { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Lowest degree with nonzero coefficient (the valuation at `q = 0`).
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(|| rat(0))
    }

    pub fn leading_coeff(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().is_some_and(|c| c.is_one())
    }

    pub fn has_integer_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Nonzero terms as `(degree, coefficient)` in increasing degree.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &Rat)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        QPolynomial {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiplies by `q^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![rat(0); k];
        coeffs.extend(self.coeffs.iter().cloned());
        QPolynomial { coeffs }
    }

    /// Divides by `q^k`; the lowest `k` coefficients must vanish.
    pub fn shift_down(&self, k: usize) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        if self.coeffs.iter().take(k).any(|c| !c.is_zero()) {
            return None;
        }
        Some(QPolynomial {
            coeffs: self.coeffs.iter().skip(k).cloned().collect(),
        })
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Evaluates at a rational point.
    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = rat(0);
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Evaluates at an integer point; exact rational result.
    pub fn eval_int(&self, x: &Int) -> Rat {
        self.eval(&Rat::from_integer(x.clone()))
    }

    /// Long division: returns `(quotient, remainder)`. Panics on zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let dd = d.degree().unwrap();
        let dlead = d.leading_coeff().unwrap().clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![rat(0); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            if rem[k].is_zero() {
                continue;
            }
            let f = &rem[k] / &dlead;
            quot[k - dd] = f.clone();
            for (j, dc) in d.coeffs.iter().enumerate() {
                if dc.is_zero() {
                    continue;
                }
                let t = dc * &f;
                rem[k - dd + j] = &rem[k - dd + j] - &t;
            }
        }
        (Self::new(quot), Self::new(rem))
    }

    /// Exact division: `Some(self / d)` when the remainder vanishes.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    /// Substitutes `q^e` for `q` (used by the E-polynomial view `q -> uv`).
    pub fn inflate(&self, e: usize) -> Self {
        let mut coeffs = vec![rat(0); self.coeffs.len().saturating_sub(1) * e + 1];
        for (k, c) in self.terms() {
            coeffs[k * e] = c.clone();
        }
        Self::new(coeffs)
    }
}

impl Add for &QPolynomial {
    type Output = QPolynomial;
    fn add(self, rhs: &QPolynomial) -> QPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            coeffs.push(self.coeff(k) + rhs.coeff(k));
        }
        QPolynomial::new(coeffs)
    }
}

impl Sub for &QPolynomial {
    type Output = QPolynomial;
    fn sub(self, rhs: &QPolynomial) -> QPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            coeffs.push(self.coeff(k) - rhs.coeff(k));
        }
        QPolynomial::new(coeffs)
    }
}

impl Mul for &QPolynomial {
    type Output = QPolynomial;
    fn mul(self, rhs: &QPolynomial) -> QPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return QPolynomial::zero();
        }
        let mut coeffs = vec![rat(0); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.terms() {
            for (j, b) in rhs.terms() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        QPolynomial::new(coeffs)
    }
}

impl Neg for &QPolynomial {
    type Output = QPolynomial;
    fn neg(self) -> QPolynomial {
        QPolynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for QPolynomial {
            type Output = QPolynomial;
            fn $method(self, rhs: QPolynomial) -> QPolynomial {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&QPolynomial> for QPolynomial {
            type Output = QPolynomial;
            fn $method(self, rhs: &QPolynomial) -> QPolynomial {
                (&self).$method(rhs)
            }
        }
    };
}
forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl Neg for QPolynomial {
    type Output = QPolynomial;
    fn neg(self) -> QPolynomial {
        -&self
    }
}

/// Writes one coefficient-and-power term in the canonical text encoding.
pub(crate) fn write_term(
    f: &mut dyn fmt::Write,
    first: bool,
    c: &Rat,
    var: &str,
    k: usize,
) -> fmt::Result {
    let neg = c.is_negative();
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
    let coeff_is_one = abs.is_one();
    if k == 0 {
        write!(f, "{abs}")?;
    } else {
        if !coeff_is_one {
            if abs.is_integer() {
                write!(f, "{abs}")?;
            } else {
                write!(f, "({abs})")?;
            }
        }
        if k == 1 {
            write!(f, "{var}")?;
        } else {
            write!(f, "{var}^{k}")?;
        }
    }
    Ok(())
}

impl fmt::Display for QPolynomial {
    /// Canonical encoding: terms in decreasing degree with explicit signs,
    /// e.g. `q^4 - q^3 - q^2 + q`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.terms().collect::<Vec<_>>().into_iter().rev() {
            write_term(f, first, c, "q", k)?;
            first = false;
        }
        Ok(())
    }
}
