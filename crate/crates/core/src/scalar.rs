//! Coefficient arithmetic shared by every table and matrix in the crate.
//!
//! Two modes exist: `f64` for Monte-Carlo style runs and [`Rational`]
//! (arbitrary precision) for certification runs where PSD margins are tiny.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exact rational coefficient.
pub type Rational = BigRational;

/// Which arithmetic a run uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Arithmetic {
    Float,
    Rational,
}

impl Arithmetic {
    pub fn as_str(self) -> &'static str {
        match self {
            Arithmetic::Float => "float",
            Arithmetic::Rational => "rational",
        }
    }
}

impl fmt::Display for Arithmetic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Arithmetic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "float" => Ok(Arithmetic::Float),
            "rational" | "exact" => Ok(Arithmetic::Rational),
            other => Err(Error::Parse(format!("unknown arithmetic mode `{other}`"))),
        }
    }
}

pub trait Scalar:
    Clone
    + fmt::Debug
    + PartialEq
    + PartialOrd
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + 'static
{
    const MODE: Arithmetic;

    fn from_i64(v: i64) -> Self;
    fn from_i128(v: i128) -> Self;
    /// Exact for rationals: every finite double is a dyadic rational.
    fn from_f64(v: f64) -> Self;
    fn to_f64(&self) -> f64;
    fn abs(&self) -> Self;
    fn parse(s: &str) -> Result<Self>;
    fn render(&self) -> String;

    /// Residual test: exact zero for rationals, `|x| <= tol` for floats.
    fn near_zero(&self, tol: f64) -> bool;

    fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc * self.clone();
        }
        acc
    }

    /// Smallest integer `>= self`, if it fits.
    fn ceil_u64(&self) -> Option<u64>;

    fn is_exact() -> bool {
        Self::MODE == Arithmetic::Rational
    }
}

impl Scalar for f64 {
    const MODE: Arithmetic = Arithmetic::Float;

    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn from_i128(v: i128) -> Self {
        v as f64
    }
    fn from_f64(v: f64) -> Self {
        v
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn abs(&self) -> Self {
        f64::abs(*self)
    }
    fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some((num, den)) = s.split_once('/') {
            let num: f64 = num
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad numerator in `{s}`")))?;
            let den: f64 = den
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad denominator in `{s}`")))?;
            if den == 0.0 {
                return Err(Error::Parse(format!("zero denominator in `{s}`")));
            }
            return Ok(num / den);
        }
        s.parse()
            .map_err(|_| Error::Parse(format!("bad number `{s}`")))
    }
    fn render(&self) -> String {
        // Shortest round-trip representation.
        format!("{self:?}")
    }
    fn near_zero(&self, tol: f64) -> bool {
        f64::abs(*self) <= tol
    }
    fn pow(&self, e: u32) -> Self {
        self.powi(e as i32)
    }
    fn ceil_u64(&self) -> Option<u64> {
        let c = self.ceil();
        (c.is_finite() && c >= 0.0 && c <= u64::MAX as f64).then_some(c as u64)
    }
}

impl Scalar for Rational {
    const MODE: Arithmetic = Arithmetic::Rational;

    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }
    fn from_i128(v: i128) -> Self {
        Rational::from_integer(BigInt::from(v))
    }
    fn from_f64(v: f64) -> Self {
        Rational::from_float(v).expect("finite value required for exact conversion")
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn abs(&self) -> Self {
        Signed::abs(self)
    }
    fn parse(s: &str) -> Result<Self> {
        parse_rational(s)
    }
    fn render(&self) -> String {
        if self.is_integer() {
            self.numer().to_string()
        } else {
            format!("{}/{}", self.numer(), self.denom())
        }
    }
    fn near_zero(&self, _tol: f64) -> bool {
        self.is_zero()
    }
    fn pow(&self, e: u32) -> Self {
        num::pow::pow(self.clone(), e as usize)
    }
    fn ceil_u64(&self) -> Option<u64> {
        self.ceil().to_integer().to_u64()
    }
}

/// Parses `"p/q"`, integers, and decimals (with optional exponent) exactly.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad rational `{s}`"));
    if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = num.trim().parse().map_err(|_| bad())?;
        let den: BigInt = den.trim().parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(num, den));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => {
            let e: i32 = s[pos + 1..].parse().map_err(|_| bad())?;
            (&s[..pos], e)
        }
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let all_digits = format!("{int_part}{frac_part}");
    let mut value = Rational::from_integer(all_digits.parse::<BigInt>().map_err(|_| bad())?);
    let scale = exponent - frac_part.len() as i32;
    let ten = Rational::from_integer(BigInt::from(10));
    if scale >= 0 {
        value = value * num::pow::pow(ten, scale as usize);
    } else {
        value = value / num::pow::pow(ten, (-scale) as usize);
    }
    Ok(if negative { -value } else { value })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn parses_fractions_and_decimals_exactly() {
        assert_eq!(parse_rational("1/4").unwrap(), q(1, 4));
        assert_eq!(parse_rational("0.25").unwrap(), q(1, 4));
        assert_eq!(parse_rational("-1.5e-1").unwrap(), q(-3, 20));
        assert_eq!(parse_rational("0.1").unwrap(), q(1, 10));
        assert_eq!(parse_rational("7").unwrap(), q(7, 1));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational(".").is_err());
    }

    #[test]
    fn float_parse_accepts_fractions() {
        assert_eq!(<f64 as Scalar>::parse("1/4").unwrap(), 0.25);
        assert_eq!(<f64 as Scalar>::parse("0.25").unwrap(), 0.25);
    }

    #[test]
    fn render_round_trips() {
        let x = q(-3, 20);
        assert_eq!(Rational::parse(&x.render()).unwrap(), x);
        let y = 0.1f64 + 0.2;
        assert_eq!(<f64 as Scalar>::parse(&y.render()).unwrap(), y);
    }

    #[test]
    fn from_f64_is_exact_for_dyadics() {
        assert_eq!(<Rational as Scalar>::from_f64(1.5), q(3, 2));
    }
}
