//! Parsers for the canonical text encodings. Formatting lives on the types'
//! `Display` impls; everything printed here parses back to an equal value.
//!
//! Encodings:
//! - polynomial: `q^4 - q^3 - q^2 + q` (decreasing degree, explicit signs)
//! - class: `(<numerator>) / (q^a * (q^2-1)^c * ...)`, bare polynomial when
//!   the denominator is trivial
//! - series: `c0 + c1*u + ... + O(u^{N+1})` with `u = q^{-1}`
//! - zeta product: `(1-t)^{-a0} (1-q t)^{-a1} ...`

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::str::FromStr;

use num_traits::Zero;

use crate::error::Error;
use crate::motclass::MotClass;
use crate::poly::QPolynomial;
use crate::series::LaurentSeries;
use crate::zeta::ZetaProduct;
use crate::{Int, Rat};

fn err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(s: &'a str) -> Self {
        Cursor {
            bytes: s.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn parse_uint(&mut self) -> Result<Int, Error> {
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(err("expected a number"));
        }
        let digits = core::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        digits.parse::<Int>().map_err(|_| err("bad integer"))
    }

    fn parse_signed_int(&mut self) -> Result<i64, Error> {
        let neg = self.eat(b'-');
        if !neg {
            let _ = self.eat(b'+');
        }
        let v = self.parse_uint()?;
        let v: i64 = v.try_into().map_err(|_| err("exponent out of range"))?;
        Ok(if neg { -v } else { v })
    }

    /// `int` or `int/int`, optionally wrapped in parentheses.
    fn parse_rat(&mut self) -> Result<Rat, Error> {
        if self.eat(b'(') {
            self.skip_ws();
            let r = self.parse_rat()?;
            self.skip_ws();
            if !self.eat(b')') {
                return Err(err("expected ')'"));
            }
            return Ok(r);
        }
        let n = self.parse_uint()?;
        if self.peek() == Some(b'/') {
            // only treat '/' as a fraction bar when a digit follows
            if self
                .bytes
                .get(self.pos + 1)
                .is_some_and(|b| b.is_ascii_digit())
            {
                self.pos += 1;
                let d = self.parse_uint()?;
                if d.is_zero() {
                    return Err(err("zero denominator"));
                }
                return Ok(Rat::new(n, d));
            }
        }
        Ok(Rat::from_integer(n))
    }
}

/// Parses a sum of terms in one variable into `(exponent, coefficient)`
/// pairs; exponents may be negative when `allow_negative` is set.
fn parse_terms(s: &str, var: u8, allow_negative: bool) -> Result<Vec<(i64, Rat)>, Error> {
    let mut cur = Cursor::new(s);
    let mut out: Vec<(i64, Rat)> = Vec::new();
    let mut first = true;
    loop {
        cur.skip_ws();
        if cur.pos >= cur.bytes.len() {
            if first {
                return Err(err("empty expression"));
            }
            break;
        }
        let mut sign = 1i64;
        if cur.eat(b'-') {
            sign = -1;
        } else if cur.eat(b'+') {
            if first {
                return Err(err("leading '+'"));
            }
        } else if !first {
            return Err(err("expected '+' or '-' between terms"));
        }
        cur.skip_ws();
        // coefficient (optional when the variable follows directly)
        let coeff = match cur.peek() {
            Some(c) if c.is_ascii_digit() || c == b'(' => {
                let r = cur.parse_rat()?;
                cur.skip_ws();
                let _ = cur.eat(b'*');
                cur.skip_ws();
                r
            }
            _ => Rat::from_integer(Int::from(1)),
        };
        // variable part (optional)
        let exp = if cur.peek() == Some(var) {
            cur.pos += 1;
            if cur.eat(b'^') {
                cur.parse_signed_int()?
            } else {
                1
            }
        } else {
            0
        };
        if exp < 0 && !allow_negative {
            return Err(err("negative exponent not allowed here"));
        }
        let signed = if sign < 0 { -coeff } else { coeff };
        match out.iter_mut().find(|(e, _)| *e == exp) {
            Some((_, c)) => *c = &*c + &signed,
            None => out.push((exp, signed)),
        }
        first = false;
    }
    Ok(out)
}

/// Parses the canonical polynomial encoding.
pub fn parse_poly(s: &str) -> Result<QPolynomial, Error> {
    let terms = parse_terms(s, b'q', false)?;
    let deg = terms.iter().map(|&(e, _)| e).max().unwrap_or(0) as usize;
    let mut coeffs = alloc::vec![Rat::zero(); deg + 1];
    for (e, c) in terms {
        coeffs[e as usize] = &coeffs[e as usize] + &c;
    }
    Ok(QPolynomial::new(coeffs))
}

/// Parses the class encoding: `(num) / (den)` or a bare polynomial. The
/// denominator must be a product of `q^a` and `(q^b-1)^c` tokens.
pub fn parse_motclass(s: &str) -> Result<MotClass, Error> {
    let Some(slash) = top_level_slash(s) else {
        return Ok(MotClass::from_poly(parse_poly(s)?));
    };
    let num_str = strip_outer_parens(s[..slash].trim());
    let den_str = strip_outer_parens(s[slash + 1..].trim());
    let num = parse_poly(num_str)?;
    let mut q_power: u32 = 0;
    let mut cyclo: Vec<(u32, u32)> = Vec::new();
    for token in split_top_level(den_str, b'*') {
        let token = token.trim();
        if token.is_empty() {
            return Err(err("empty denominator factor"));
        }
        let (base, exp) = split_power(token)?;
        let base = strip_outer_parens(base.trim());
        let pure_q_power: Option<u32> = if base == "q" {
            Some(1)
        } else {
            base.strip_prefix("q^")
                .and_then(|rest| rest.trim().parse().ok())
        };
        if let Some(a) = pure_q_power {
            q_power += a * exp;
        } else {
            let poly = parse_poly(base)?;
            let b = cyclo_exponent(&poly).ok_or_else(|| {
                err(format_args!("denominator factor '{base}' is not q^b - 1").to_string())
            })?;
            cyclo.push((b, exp));
        }
    }
    Ok(MotClass::new(num, q_power, cyclo))
}

/// Recognizes `q^b - 1`, returning `b`.
fn cyclo_exponent(p: &QPolynomial) -> Option<u32> {
    let b = p.degree()? as u32;
    if b >= 1 && p == &QPolynomial::q_pow_minus_one(b) {
        Some(b)
    } else {
        None
    }
}

fn top_level_slash(s: &str) -> Option<usize> {
    let mut depth = 0i32;
    for (i, c) in s.bytes().enumerate() {
        match c {
            b'(' => depth += 1,
            b')' => depth -= 1,
            b'/' if depth == 0 => {
                // fraction bars inside coefficients sit between digits
                let prev = s[..i].trim_end().bytes().last();
                let next = s[i + 1..].trim_start().bytes().next();
                let digits = prev.is_some_and(|b| b.is_ascii_digit())
                    && next.is_some_and(|b| b.is_ascii_digit());
                if !digits {
                    return Some(i);
                }
            }
            _ => {}
        }
    }
    None
}

fn split_top_level(s: &str, sep: u8) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.bytes().enumerate() {
        match c {
            b'(' => depth += 1,
            b')' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

fn strip_outer_parens(s: &str) -> &str {
    let t = s.trim();
    if t.starts_with('(') && t.ends_with(')') {
        // only strip when the parens actually match each other
        let mut depth = 0i32;
        for (i, c) in t.bytes().enumerate() {
            match c {
                b'(' => depth += 1,
                b')' => {
                    depth -= 1;
                    if depth == 0 && i != t.len() - 1 {
                        return t;
                    }
                }
                _ => {}
            }
        }
        return t[1..t.len() - 1].trim();
    }
    t
}

/// Splits `base^exp` where the exponent applies to a parenthesized base or
/// a bare token; returns `(base, exp)` with `exp = 1` when absent.
fn split_power(token: &str) -> Result<(&str, u32), Error> {
    let t = token.trim();
    if t.starts_with('(') {
        let mut depth = 0i32;
        for (i, c) in t.bytes().enumerate() {
            match c {
                b'(' => depth += 1,
                b')' => {
                    depth -= 1;
                    if depth == 0 {
                        let rest = t[i + 1..].trim();
                        if rest.is_empty() {
                            return Ok((&t[..=i], 1));
                        }
                        let exp_str = rest
                            .strip_prefix('^')
                            .ok_or_else(|| err("expected '^' after factor"))?;
                        let exp: u32 = exp_str
                            .trim()
                            .parse()
                            .map_err(|_| err("bad factor exponent"))?;
                        return Ok((&t[..=i], exp));
                    }
                }
                _ => {}
            }
        }
        Err(err("unbalanced parentheses"))
    } else {
        Ok((t, 1))
    }
}

/// Parses the series encoding; a trailing `+ O(u^{K})` sets the precision
/// to `K - 1`, otherwise the series is exact.
pub fn parse_series(s: &str) -> Result<LaurentSeries, Error> {
    let t = s.trim();
    let (body, prec) = match t.rfind("O(") {
        Some(pos) => {
            let head = t[..pos].trim_end();
            let head = head
                .strip_suffix('+')
                .ok_or_else(|| err("expected '+' before O(...)"))?
                .trim_end();
            let tail = t[pos + 2..]
                .trim()
                .strip_suffix(')')
                .ok_or_else(|| err("unclosed O(...)"))?;
            let inner = tail.trim();
            let exp_str = if inner == "u" {
                "1"
            } else {
                inner
                    .strip_prefix("u^")
                    .ok_or_else(|| err("expected u power in O(...)"))?
            };
            let k: i64 = exp_str
                .trim_matches(['{', '}'])
                .parse()
                .map_err(|_| err("bad O(...) exponent"))?;
            (head, Some(k - 1))
        }
        None => (t, None),
    };
    let terms = if body == "0" || body.is_empty() {
        Vec::new()
    } else {
        parse_terms(body, b'u', true)?
    };
    let series = LaurentSeries::from_terms(terms);
    Ok(match prec {
        Some(n) => series.truncate(n),
        None => series,
    })
}

/// Parses the zeta-product encoding. `1` denotes the empty product.
pub fn parse_zeta(s: &str) -> Result<ZetaProduct, Error> {
    let t = s.trim();
    if t == "1" {
        return Ok(ZetaProduct::new([]));
    }
    let mut factors = Vec::new();
    let mut rest = t;
    while !rest.is_empty() {
        let open = rest.find('(').ok_or_else(|| err("expected '('"))?;
        let close = rest.find(')').ok_or_else(|| err("unclosed factor"))?;
        let inner = rest[open + 1..close].trim();
        // inner is `1-t`, `1-q t`, or `1-q^i t`
        let after_one = inner
            .strip_prefix('1')
            .ok_or_else(|| err("factor must start with 1"))?
            .trim_start();
        let after_minus = after_one
            .strip_prefix('-')
            .ok_or_else(|| err("expected '-' in factor"))?
            .trim_start();
        let i: u32 = if after_minus == "t" {
            0
        } else {
            let qpart = after_minus
                .strip_suffix('t')
                .ok_or_else(|| err("factor must end with t"))?
                .trim_end();
            if qpart == "q" {
                1
            } else {
                qpart
                    .strip_prefix("q^")
                    .and_then(|e| e.trim().parse().ok())
                    .ok_or_else(|| err("bad q power in factor"))?
            }
        };
        let rest_after = rest[close + 1..].trim_start();
        let exp_str = rest_after
            .strip_prefix('^')
            .ok_or_else(|| err("expected '^'"))?;
        let exp_str = exp_str.trim_start();
        let (exp_tok, remainder) = if let Some(stripped) = exp_str.strip_prefix('{') {
            let end = stripped.find('}').ok_or_else(|| err("unclosed exponent"))?;
            (&stripped[..end], &stripped[end + 1..])
        } else {
            let end = exp_str
                .find(|c: char| c.is_whitespace() || c == '(')
                .unwrap_or(exp_str.len());
            (&exp_str[..end], &exp_str[end..])
        };
        let neg_a: i64 = exp_tok.trim().parse().map_err(|_| err("bad exponent"))?;
        factors.push((i, -neg_a));
        rest = remainder.trim_start();
    }
    Ok(ZetaProduct::new(factors))
}

impl FromStr for QPolynomial {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        parse_poly(s)
    }
}

impl FromStr for MotClass {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        parse_motclass(s)
    }
}

impl FromStr for LaurentSeries {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        parse_series(s)
    }
}

impl FromStr for ZetaProduct {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        parse_zeta(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    fn p(coeffs: &[i64]) -> QPolynomial {
        QPolynomial::from_int_coeffs(coeffs)
    }

    #[test]
    fn poly_roundtrip() {
        for poly in [
            p(&[0, 1, -1, -1, 1]),
            p(&[1, -1]),
            p(&[5]),
            QPolynomial::zero(),
            QPolynomial::monomial(3, Rat::new(Int::from(1), Int::from(2))),
            p(&[0, 0, -2]),
        ] {
            let s = poly.to_string();
            assert_eq!(parse_poly(&s).unwrap(), poly, "{s}");
        }
    }

    #[test]
    fn poly_liberal_inputs() {
        assert_eq!(
            parse_poly("q^7 - 2q^6 - q^5 + 4q^4 - q^3 - 2q^2 + q")
                .unwrap()
                .degree(),
            Some(7)
        );
        assert_eq!(parse_poly("2*q^2 + 1").unwrap(), p(&[1, 0, 2]));
        assert_eq!(
            parse_poly("1/2 q").unwrap(),
            QPolynomial::monomial(1, Rat::new(Int::from(1), Int::from(2)))
        );
        assert_eq!(parse_poly("q + q").unwrap(), p(&[0, 2]));
        assert_eq!(parse_poly("-q + 1").unwrap(), p(&[1, -1]));
        assert!(parse_poly("q^-1").is_err());
        assert!(parse_poly("").is_err());
        assert!(parse_poly("q q").is_err());
    }

    #[test]
    fn motclass_roundtrip() {
        let cases = [
            MotClass::from_poly(p(&[0, 1, -1, -1, 1])),
            MotClass::new(p(&[1]), 1, vec![(2, 1)]),
            MotClass::new(p(&[1, 1]), 3, vec![(1, 2), (3, 1)]),
            MotClass::zero(),
        ];
        for class in cases {
            let s = class.to_string();
            let back = parse_motclass(&s).unwrap();
            assert_eq!(back, class, "{s}");
        }
        // denominator tokens in either order, with explicit powers
        let m = parse_motclass("(q + 1) / (q^2 * (q-1)^2 * (q^3-1))").unwrap();
        assert_eq!(m.q_power(), 2);
        assert_eq!(m.cyclo_factors(), &[(1, 2), (3, 1)]);
        assert!(parse_motclass("(q) / (q+2)").is_err());
    }

    #[test]
    fn series_roundtrip() {
        let cases = [
            MotClass::inv_cyclo(2).expand(6),
            MotClass::from_poly(p(&[0, 1, -1, -1, 1])).expand(3),
            LaurentSeries::zero(),
            MotClass::zero().expand(4),
            MotClass::one().expand(0),
        ];
        for series in cases {
            let s = series.to_string();
            assert_eq!(parse_series(&s).unwrap(), series, "{s}");
        }
        // truncated all-zero series keeps its precision and stays distinct
        // from the exact zero
        let z = parse_series("0 + O(u^5)").unwrap();
        assert!(!z.is_exact_zero());
        assert!(z.is_zero_through_precision());
        assert_ne!(z, LaurentSeries::zero());
    }

    #[test]
    fn zeta_roundtrip() {
        for poly in [
            p(&[1, 1]),
            p(&[0, -1, 1]),
            p(&[3, 0, -2, 1]),
            QPolynomial::zero(),
        ] {
            let z = crate::zeta::kapranov_zeta(&poly).unwrap();
            let s = z.to_string();
            assert_eq!(parse_zeta(&s).unwrap(), z, "{s}");
        }
    }
}
