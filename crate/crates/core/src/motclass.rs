//! Elements of the localized Grothendieck ring: integer- or rational-
//! coefficient polynomials in `q` divided by a product `q^a * (q^b - 1)^c`.
//!
//! Canonical form divides the numerator by `q` and by each `(q^b - 1)` while
//! the division is exact; denominators stay factored. Two canonical values
//! can still denote the same ring element (e.g. `(q+1)/(q^2-1)` and
//! `1/(q-1)`), so equality is decided by cross-multiplication.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::poly::QPolynomial;
use crate::series::LaurentSeries;
use crate::{Int, Rat};

/// Scalar, `q`-power, and `(q^b - 1)` factors of a localized unit.
type UnitParts = (Rat, u32, Vec<(u32, u32)>);

/// A virtual class `num / (q^a * prod (q^b - 1)^c)` in canonical form.
#[derive(Clone, Debug)]
pub struct MotClass {
    num: QPolynomial,
    q_power: u32,
    /// `(b, c)` pairs sorted by `b`, each `c > 0`.
    cyclo: Vec<(u32, u32)>,
}

impl MotClass {
    pub fn zero() -> Self {
        MotClass {
            num: QPolynomial::zero(),
            q_power: 0,
            cyclo: Vec::new(),
        }
    }

    pub fn one() -> Self {
        MotClass::from_poly(QPolynomial::one())
    }

    /// The Lefschetz class `q`.
    pub fn q() -> Self {
        MotClass::from_poly(QPolynomial::q())
    }

    pub fn from_int(n: i64) -> Self {
        MotClass::from_poly(QPolynomial::from_int(n))
    }

    pub fn from_poly(num: QPolynomial) -> Self {
        MotClass {
            num,
            q_power: 0,
            cyclo: Vec::new(),
        }
    }

    /// General constructor; the result is reduced to canonical form.
    pub fn new(num: QPolynomial, q_power: u32, cyclo: Vec<(u32, u32)>) -> Self {
        let mut m = MotClass {
            num,
            q_power,
            cyclo,
        };
        m.canonicalize();
        m
    }

    /// `1 / q^a`.
    pub fn inv_q_pow(a: u32) -> Self {
        MotClass::new(QPolynomial::one(), a, Vec::new())
    }

    /// `1 / (q^b - 1)`.
    pub fn inv_cyclo(b: u32) -> Self {
        MotClass::new(QPolynomial::one(), 0, vec![(b, 1)])
    }

    pub fn numerator(&self) -> &QPolynomial {
        &self.num
    }

    pub fn q_power(&self) -> u32 {
        self.q_power
    }

    pub fn cyclo_factors(&self) -> &[(u32, u32)] {
        &self.cyclo
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// True when the denominator is trivial.
    pub fn is_polynomial(&self) -> bool {
        self.q_power == 0 && self.cyclo.is_empty()
    }

    /// Returns the numerator when the denominator is trivial.
    pub fn as_poly(&self) -> Result<QPolynomial, Error> {
        if self.is_polynomial() {
            Ok(self.num.clone())
        } else {
            Err(Error::NotPolynomial)
        }
    }

    fn canonicalize(&mut self) {
        if self.num.is_zero() {
            self.q_power = 0;
            self.cyclo.clear();
            return;
        }
        // merge equal b, sort
        self.cyclo.sort_by_key(|&(b, _)| b);
        let mut merged: Vec<(u32, u32)> = Vec::with_capacity(self.cyclo.len());
        for &(b, c) in &self.cyclo {
            if c == 0 {
                continue;
            }
            match merged.last_mut() {
                Some((pb, pc)) if *pb == b => *pc += c,
                _ => merged.push((b, c)),
            }
        }
        self.cyclo = merged;
        // cancel powers of q
        if self.q_power > 0 {
            let v = self.num.valuation().unwrap_or(0).min(self.q_power as usize);
            if v > 0 {
                self.num = self.num.shift_down(v).unwrap();
                self.q_power -= v as u32;
            }
        }
        // cancel (q^b - 1) factors dividing the numerator exactly
        let mut kept: Vec<(u32, u32)> = Vec::with_capacity(self.cyclo.len());
        for &(b, mut c) in &self.cyclo.clone() {
            let d = QPolynomial::q_pow_minus_one(b);
            while c > 0 {
                match self.num.div_exact(&d) {
                    Some(q) => {
                        self.num = q;
                        c -= 1;
                    }
                    None => break,
                }
            }
            if c > 0 {
                kept.push((b, c));
            }
        }
        self.cyclo = kept;
    }

    /// The denominator expanded to a polynomial.
    pub fn denominator_poly(&self) -> QPolynomial {
        let mut d = QPolynomial::one().shift_up(self.q_power as usize);
        for &(b, c) in &self.cyclo {
            d = &d * &QPolynomial::q_pow_minus_one(b).pow(c);
        }
        d
    }

    /// Virtual dimension: `deg(num) - a - sum(b*c)`.
    pub fn dimension(&self) -> Result<i64, Error> {
        let deg = self.num.degree().ok_or(Error::ZeroClass)? as i64;
        let den: i64 = self.q_power as i64
            + self
                .cyclo
                .iter()
                .map(|&(b, c)| b as i64 * c as i64)
                .sum::<i64>();
        Ok(deg - den)
    }

    /// Specializes at an integer `q0`, optionally guarded by a congruence
    /// `(modulus, residue)` on admissible values.
    pub fn evaluate(&self, q0: i64, guard: Option<(u64, u64)>) -> Result<Rat, Error> {
        if let Some((m, r)) = guard {
            if m == 0 || q0.rem_euclid(m as i64) as u64 != r {
                return Err(Error::GuardViolated {
                    modulus: m,
                    residue: r,
                    q0,
                });
            }
        }
        let x = Int::from(q0);
        let den = self.denominator_poly().eval_int(&x);
        if den.is_zero() {
            return Err(Error::DenominatorZero);
        }
        Ok(self.num.eval_int(&x) / den)
    }

    /// Expansion in the completed ring: exact at all `u`-exponents `<= n`,
    /// always carrying precision `n` so expansions at equal precision
    /// compare uniformly.
    pub fn expand(&self, n: i64) -> LaurentSeries {
        if self.num.is_zero() {
            return LaurentSeries::zero().truncate(n);
        }
        let deg = self.num.degree().unwrap() as i64;
        // q^d / q^a = u^(a - d)
        let mut s = LaurentSeries::from_terms(
            self.num
                .terms()
                .map(|(d, c)| (self.q_power as i64 - d as i64, c.clone())),
        );
        let work = n + deg + 1;
        for &(b, c) in &self.cyclo {
            s = s.mul(&LaurentSeries::geometric(b, work).pow(c));
        }
        s.truncate(n)
    }

    /// Substitutes `q -> uv`, the E-polynomial motivic measure.
    pub fn e_substitute(&self) -> ESubstituted {
        ESubstituted(self.clone())
    }

    fn same_shape_add(&self, other: &Self) -> MotClass {
        // common denominator q^max(a) * prod (q^b-1)^max(c)
        let a = self.q_power.max(other.q_power);
        let mut cyclo: Vec<(u32, u32)> = Vec::new();
        for &(b, c) in self.cyclo.iter().chain(other.cyclo.iter()) {
            match cyclo.iter_mut().find(|(eb, _)| *eb == b) {
                Some((_, ec)) => *ec = (*ec).max(c),
                None => cyclo.push((b, c)),
            }
        }
        cyclo.sort_by_key(|&(b, _)| b);
        let lift = |m: &MotClass| -> QPolynomial {
            let mut p = m.num.shift_up((a - m.q_power) as usize);
            for &(b, c) in &cyclo {
                let have = m
                    .cyclo
                    .iter()
                    .find(|(eb, _)| *eb == b)
                    .map(|&(_, ec)| ec)
                    .unwrap_or(0);
                if c > have {
                    p = &p * &QPolynomial::q_pow_minus_one(b).pow(c - have);
                }
            }
            p
        };
        let num = &lift(self) + &lift(other);
        MotClass::new(num, a, cyclo)
    }

    /// Raises to a nonnegative power.
    pub fn pow(&self, e: u32) -> Self {
        let mut acc = MotClass::one();
        let mut base = self.clone();
        let mut e = e;
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

    /// Writes the numerator as `scalar * q^j * prod (q^b - 1)`, if possible.
    /// Such classes are exactly the units of the localization.
    fn unit_decomposition(&self) -> Option<UnitParts> {
        if self.num.is_zero() {
            return None;
        }
        let j = self.num.valuation().unwrap();
        let mut p = self.num.shift_down(j).unwrap();
        let mut factors: Vec<(u32, u32)> = Vec::new();
        loop {
            let deg = p.degree().unwrap() as u32;
            if deg == 0 {
                break;
            }
            // (q^b - 1) | p forces the b-th cyclotomic into p, so trying the
            // largest dividing b first peels off a genuine factor.
            let mut divided = false;
            for b in (1..=deg).rev() {
                if let Some(quot) = p.div_exact(&QPolynomial::q_pow_minus_one(b)) {
                    p = quot;
                    match factors.iter_mut().find(|(fb, _)| *fb == b) {
                        Some((_, fc)) => *fc += 1,
                        None => factors.push((b, 1)),
                    }
                    divided = true;
                    break;
                }
            }
            if !divided {
                return None;
            }
        }
        factors.sort_by_key(|&(b, _)| b);
        Some((p.coeff(0), j as u32, factors))
    }

    /// True when the class is invertible in the localization.
    pub fn is_unit(&self) -> bool {
        self.unit_decomposition().is_some()
    }

    /// Multiplicative inverse of a localized unit.
    pub fn try_inverse(&self) -> Result<MotClass, Error> {
        let (scalar, j, factors) = self.unit_decomposition().ok_or(Error::NotInvertible)?;
        // 1 / (s * q^j * prod(q^b-1)^c / (q^a * prod (q^b-1)^c_den))
        //   = q^a * prod(q^b-1)^c_den / (s * q^j * prod(q^b-1)^c)
        let mut num = QPolynomial::one().shift_up(self.q_power as usize);
        for &(b, c) in &self.cyclo {
            num = &num * &QPolynomial::q_pow_minus_one(b).pow(c);
        }
        num = num.scale(&scalar.recip());
        Ok(MotClass::new(num, j, factors))
    }

    /// Exact division. Succeeds when the divisor is a localized unit, or
    /// when it divides exactly after clearing denominators.
    pub fn div(&self, d: &MotClass) -> Result<MotClass, Error> {
        if d.is_zero() {
            return Err(Error::NotInvertible);
        }
        if let Ok(inv) = d.try_inverse() {
            return Ok(self * &inv);
        }
        // (num_a / D_a) / (num_d / D_d) = (num_a * D_d) / (num_d * D_a)
        let cleared = &self.num * &d.denominator_poly();
        match cleared.div_exact(&d.num) {
            Some(quot) => Ok(MotClass::new(quot, self.q_power, self.cyclo.clone())),
            None => Err(Error::NotInvertible),
        }
    }
}

impl PartialEq for MotClass {
    /// Equality by cross-multiplication of cleared forms.
    fn eq(&self, other: &Self) -> bool {
        &self.num * &other.denominator_poly() == &other.num * &self.denominator_poly()
    }
}

impl Eq for MotClass {}

impl Add for &MotClass {
    type Output = MotClass;
    fn add(self, rhs: &MotClass) -> MotClass {
        self.same_shape_add(rhs)
    }
}

impl Sub for &MotClass {
    type Output = MotClass;
    fn sub(self, rhs: &MotClass) -> MotClass {
        self + &(-rhs)
    }
}

impl Mul for &MotClass {
    type Output = MotClass;
    fn mul(self, rhs: &MotClass) -> MotClass {
        let mut cyclo = self.cyclo.clone();
        cyclo.extend_from_slice(&rhs.cyclo);
        MotClass::new(&self.num * &rhs.num, self.q_power + rhs.q_power, cyclo)
    }
}

impl Neg for &MotClass {
    type Output = MotClass;
    fn neg(self) -> MotClass {
        MotClass {
            num: -&self.num,
            q_power: self.q_power,
            cyclo: self.cyclo.clone(),
        }
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for MotClass {
            type Output = MotClass;
            fn $method(self, rhs: MotClass) -> MotClass {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&MotClass> for MotClass {
            type Output = MotClass;
            fn $method(self, rhs: &MotClass) -> MotClass {
                (&self).$method(rhs)
            }
        }
    };
}
forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl Neg for MotClass {
    type Output = MotClass;
    fn neg(self) -> MotClass {
        -&self
    }
}

impl fmt::Display for MotClass {
    /// Encoding `(<numerator>) / (q^a * (q^2-1)^c * ...)`; a bare polynomial
    /// when the denominator is trivial.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            return write!(f, "{}", self.num);
        }
        write!(f, "({}) / (", self.num)?;
        let mut first = true;
        if self.q_power > 0 {
            if self.q_power == 1 {
                write!(f, "q")?;
            } else {
                write!(f, "q^{}", self.q_power)?;
            }
            first = false;
        }
        for &(b, c) in &self.cyclo {
            if !first {
                write!(f, " * ")?;
            }
            if b == 1 {
                write!(f, "(q-1)")?;
            } else {
                write!(f, "(q^{b}-1)")?;
            }
            if c > 1 {
                write!(f, "^{c}")?;
            }
            first = false;
        }
        write!(f, ")")
    }
}

/// A class viewed through the E-polynomial measure: every `q^k` reads as
/// `(uv)^k`. Displays in `uv` and evaluates at rational `(u, v)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ESubstituted(MotClass);

impl ESubstituted {
    pub fn class(&self) -> &MotClass {
        &self.0
    }

    /// Evaluates at a rational point `(u, v)`; equals `evaluate` of the
    /// underlying class at `q = u*v`.
    pub fn eval(&self, u: &Rat, v: &Rat) -> Option<Rat> {
        let q = u * v;
        let den = self.0.denominator_poly().eval(&q);
        if den.is_zero() {
            return None;
        }
        Some(self.0.numerator().eval(&q) / den)
    }
}

impl fmt::Display for ESubstituted {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let write_poly = |f: &mut fmt::Formatter<'_>, p: &QPolynomial| -> fmt::Result {
            if p.is_zero() {
                return write!(f, "0");
            }
            let mut first = true;
            for (k, c) in p.terms().collect::<Vec<_>>().into_iter().rev() {
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
                if k == 0 {
                    write!(f, "{abs}")?;
                } else {
                    if !abs.is_one() {
                        if abs.is_integer() {
                            write!(f, "{abs}")?;
                        } else {
                            write!(f, "({abs})")?;
                        }
                    }
                    if k == 1 {
                        write!(f, "(uv)")?;
                    } else {
                        write!(f, "(uv)^{k}")?;
                    }
                }
                first = false;
            }
            Ok(())
        };
        let m = &self.0;
        if m.is_polynomial() {
            return write_poly(f, m.numerator());
        }
        write_poly(f, m.numerator())?;
        write!(f, " / (")?;
        let mut first = true;
        if m.q_power() > 0 {
            if m.q_power() == 1 {
                write!(f, "(uv)")?;
            } else {
                write!(f, "(uv)^{}", m.q_power())?;
            }
            first = false;
        }
        for &(b, c) in m.cyclo_factors() {
            if !first {
                write!(f, " * ")?;
            }
            if b == 1 {
                write!(f, "((uv)-1)")?;
            } else {
                write!(f, "((uv)^{b}-1)")?;
            }
            if c > 1 {
                write!(f, "^{c}")?;
            }
            first = false;
        }
        write!(f, ")")
    }
}
