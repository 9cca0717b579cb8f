//! Exact number types shared by every module.
//!
//! All polygon moments live in [`Rational`]. Quantities that carry powers of
//! π are kept as a [`PiMultiple`] so identities between them stay exact, and
//! the cohomology predicates additionally work over [`QuadraticSurd`] so that
//! thresholds such as `2 + √3` can be evaluated without rounding.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse {input:?} as a rational number")]
pub struct ParseRationalError {
    pub input: String,
}

/// Builds `n/d` from machine integers. Panics if `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"`, an integer, or a finite decimal such as `"-0.125"` or `"1e-9"`.
/// Decimals are converted exactly.
pub fn parse_rational(input: &str) -> Result<Rational, ParseRationalError> {
    let err = || ParseRationalError {
        input: input.to_string(),
    };
    let s = input.trim();
    if s.is_empty() {
        return Err(err());
    }
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| err())?;
        let d = BigInt::from_str(d.trim()).map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        return Ok(Rational::new(n, d));
    }
    if let Ok(n) = BigInt::from_str(s) {
        return Ok(Rational::from_integer(n));
    }
    parse_decimal(s).ok_or_else(err)
}

fn parse_decimal(s: &str) -> Option<Rational> {
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (negative, mantissa) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (whole, frac) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if whole.is_empty() && frac.is_empty() {
        return None;
    }
    if !whole.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{whole}{frac}");
    let mut value = Rational::from_integer(BigInt::from_str(&digits).ok()?);
    let shift = exponent - frac.len() as i32;
    let ten = Rational::from_integer(BigInt::from(10));
    if shift >= 0 {
        value *= num_traits::pow(ten, shift as usize);
    } else {
        value /= num_traits::pow(ten, (-shift) as usize);
    }
    Some(if negative { -value } else { value })
}

/// Exact conversion of a finite float. Panics on NaN or infinity.
pub fn rational_from_f64(x: f64) -> Rational {
    Rational::from_float(x).expect("finite float")
}

pub fn to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Serialization of rationals as `"p/q"` strings; accepts integers or strings on input.
pub mod rational_string {
    use super::*;

    pub fn serialize<S: Serializer>(value: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&value.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        RationalRepr::deserialize(d)?
            .into_rational()
            .map_err(serde::de::Error::custom)
    }
}

/// Accepted JSON encodings of a rational.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum RationalRepr {
    Int(i64),
    Text(String),
}

impl RationalRepr {
    pub fn into_rational(self) -> Result<Rational, ParseRationalError> {
        match self {
            RationalRepr::Int(n) => Ok(int(n)),
            RationalRepr::Text(s) => parse_rational(&s),
        }
    }
}

/// A point or vector in the plane with exact coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vec2 {
    pub x: Rational,
    pub y: Rational,
}

impl Vec2 {
    pub fn new(x: Rational, y: Rational) -> Self {
        Vec2 { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Vec2::new(int(x), int(y))
    }

    pub fn zero() -> Self {
        Vec2::new(Rational::zero(), Rational::zero())
    }

    pub fn dot(&self, other: &Vec2) -> Rational {
        &self.x * &other.x + &self.y * &other.y
    }

    /// `self.x * other.y - self.y * other.x`
    pub fn cross(&self, other: &Vec2) -> Rational {
        &self.x * &other.y - &self.y * &other.x
    }

    pub fn scale(&self, c: &Rational) -> Vec2 {
        Vec2::new(&self.x * c, &self.y * c)
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn to_f64(&self) -> [f64; 2] {
        [to_f64(&self.x), to_f64(&self.y)]
    }
}

impl Add for &Vec2 {
    type Output = Vec2;
    fn add(self, rhs: &Vec2) -> Vec2 {
        Vec2::new(&self.x + &rhs.x, &self.y + &rhs.y)
    }
}

impl Sub for &Vec2 {
    type Output = Vec2;
    fn sub(self, rhs: &Vec2) -> Vec2 {
        Vec2::new(&self.x - &rhs.x, &self.y - &rhs.y)
    }
}

impl Neg for &Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2::new(-&self.x, -&self.y)
    }
}

impl fmt::Display for Vec2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl Serialize for Vec2 {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [self.x.to_string(), self.y.to_string()].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Vec2 {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let [x, y] = <[RationalRepr; 2]>::deserialize(d)?;
        let x = x.into_rational().map_err(serde::de::Error::custom)?;
        let y = y.into_rational().map_err(serde::de::Error::custom)?;
        Ok(Vec2::new(x, y))
    }
}

/// `coefficient · π^power`, exact in the coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiMultiple {
    pub coefficient: Rational,
    pub pi_power: i32,
}

impl PiMultiple {
    pub fn new(coefficient: Rational, pi_power: i32) -> Self {
        PiMultiple {
            coefficient,
            pi_power,
        }
    }

    pub fn rational(coefficient: Rational) -> Self {
        PiMultiple::new(coefficient, 0)
    }

    pub fn mul(&self, other: &PiMultiple) -> PiMultiple {
        PiMultiple::new(
            &self.coefficient * &other.coefficient,
            self.pi_power + other.pi_power,
        )
    }

    /// Panics if `other` has a zero coefficient.
    pub fn div(&self, other: &PiMultiple) -> PiMultiple {
        PiMultiple::new(
            &self.coefficient / &other.coefficient,
            self.pi_power - other.pi_power,
        )
    }

    /// The exact value when no π factor remains.
    pub fn as_rational(&self) -> Option<&Rational> {
        (self.pi_power == 0 || self.coefficient.is_zero()).then_some(&self.coefficient)
    }

    pub fn to_f64(&self) -> f64 {
        to_f64(&self.coefficient) * std::f64::consts::PI.powi(self.pi_power)
    }
}

impl fmt::Display for PiMultiple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.pi_power {
            0 => write!(f, "{}", self.coefficient),
            1 => write!(f, "({})π", self.coefficient),
            p => write!(f, "({})π^{}", self.coefficient, p),
        }
    }
}

/// `rational + irrational·√radicand` with rational parts.
///
/// Values with a zero irrational part are plain rationals and combine with
/// any radicand; two genuinely irrational operands must share the radicand.
#[derive(Debug, Clone)]
pub struct QuadraticSurd {
    pub rational: Rational,
    pub irrational: Rational,
    pub radicand: u64,
}

impl QuadraticSurd {
    /// Panics if `radicand` is zero or a perfect square.
    pub fn new(rational: Rational, irrational: Rational, radicand: u64) -> Self {
        let root = (radicand as f64).sqrt().round() as u64;
        assert!(
            radicand > 0 && root * root != radicand,
            "radicand {radicand} must be a positive non-square"
        );
        QuadraticSurd {
            rational,
            irrational,
            radicand,
        }
    }

    pub fn from_rational(rational: Rational) -> Self {
        QuadraticSurd {
            rational,
            irrational: Rational::zero(),
            radicand: 2,
        }
    }

    fn common_radicand(&self, other: &QuadraticSurd) -> u64 {
        match (self.irrational.is_zero(), other.irrational.is_zero()) {
            (true, _) => other.radicand,
            (_, true) => self.radicand,
            _ => {
                assert_eq!(
                    self.radicand, other.radicand,
                    "cannot combine surds with different radicands"
                );
                self.radicand
            }
        }
    }

    fn with(rational: Rational, irrational: Rational, radicand: u64) -> Self {
        QuadraticSurd {
            rational,
            irrational,
            radicand,
        }
    }

    fn conjugate(&self) -> Self {
        Self::with(self.rational.clone(), -&self.irrational, self.radicand)
    }

    /// `a² − b²·r`
    fn norm(&self) -> Rational {
        &self.rational * &self.rational
            - &self.irrational * &self.irrational * int(self.radicand as i64)
    }

    pub fn signum(&self) -> Ordering {
        let a = self.rational.cmp(&Rational::zero());
        let b = self.irrational.cmp(&Rational::zero());
        match (a, b) {
            (Ordering::Equal, s) | (s, Ordering::Equal) => s,
            (sa, sb) if sa == sb => sa,
            // opposite signs: whichever square dominates decides
            (sa, _) => match self.norm().cmp(&Rational::zero()) {
                Ordering::Greater => sa,
                Ordering::Less => sa.reverse(),
                Ordering::Equal => Ordering::Equal,
            },
        }
    }

    pub fn to_f64(&self) -> f64 {
        to_f64(&self.rational) + to_f64(&self.irrational) * (self.radicand as f64).sqrt()
    }
}

impl PartialEq for QuadraticSurd {
    fn eq(&self, other: &Self) -> bool {
        self.rational == other.rational
            && self.irrational == other.irrational
            && (self.irrational.is_zero() || self.radicand == other.radicand)
    }
}

impl fmt::Display for QuadraticSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.irrational.is_zero() {
            write!(f, "{}", self.rational)
        } else {
            write!(
                f,
                "{} + ({})√{}",
                self.rational, self.irrational, self.radicand
            )
        }
    }
}

/// Ordered field used by the cohomology predicates.
pub trait ExactScalar: Clone + fmt::Debug + fmt::Display + PartialEq {
    fn from_rational(value: Rational) -> Self;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    /// Panics on division by zero.
    fn over(&self, other: &Self) -> Self;
    fn sign(&self) -> Ordering;
    fn to_float(&self) -> f64;

    fn from_int(value: i64) -> Self {
        Self::from_rational(int(value))
    }

    fn vanishes(&self) -> bool {
        self.sign() == Ordering::Equal
    }

    fn is_pos(&self) -> bool {
        self.sign() == Ordering::Greater
    }

    fn is_nonneg(&self) -> bool {
        self.sign() != Ordering::Less
    }
}

impl ExactScalar for Rational {
    fn from_rational(value: Rational) -> Self {
        value
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn over(&self, other: &Self) -> Self {
        self / other
    }
    fn sign(&self) -> Ordering {
        if self.is_positive() {
            Ordering::Greater
        } else if self.is_negative() {
            Ordering::Less
        } else {
            Ordering::Equal
        }
    }
    fn to_float(&self) -> f64 {
        to_f64(self)
    }
}

impl ExactScalar for QuadraticSurd {
    fn from_rational(value: Rational) -> Self {
        QuadraticSurd::from_rational(value)
    }
    fn plus(&self, other: &Self) -> Self {
        let r = self.common_radicand(other);
        Self::with(
            &self.rational + &other.rational,
            &self.irrational + &other.irrational,
            r,
        )
    }
    fn minus(&self, other: &Self) -> Self {
        let r = self.common_radicand(other);
        Self::with(
            &self.rational - &other.rational,
            &self.irrational - &other.irrational,
            r,
        )
    }
    fn times(&self, other: &Self) -> Self {
        let r = self.common_radicand(other);
        let rational = &self.rational * &other.rational
            + &self.irrational * &other.irrational * int(r as i64);
        let irrational = &self.rational * &other.irrational + &self.irrational * &other.rational;
        Self::with(rational, irrational, r)
    }
    fn over(&self, other: &Self) -> Self {
        let norm = other.norm();
        assert!(!norm.is_zero(), "division by zero");
        let num = self.times(&other.conjugate());
        Self::with(&num.rational / &norm, &num.irrational / &norm, num.radicand)
    }
    fn sign(&self) -> Ordering {
        QuadraticSurd::signum(self)
    }
    fn to_float(&self) -> f64 {
        QuadraticSurd::to_f64(self)
    }
}

// Helper arithmetic used by the polygon and cone code.
impl Mul<&Rational> for &Vec2 {
    type Output = Vec2;
    fn mul(self, rhs: &Rational) -> Vec2 {
        self.scale(rhs)
    }
}

impl Div<&Rational> for &Vec2 {
    type Output = Vec2;
    fn div(self, rhs: &Rational) -> Vec2 {
        Vec2::new(&self.x / rhs, &self.y / rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_integers_and_decimals() {
        assert_eq!(parse_rational("3/6").unwrap(), ratio(1, 2));
        assert_eq!(parse_rational("-7").unwrap(), int(-7));
        assert_eq!(parse_rational("0.125").unwrap(), ratio(1, 8));
        assert_eq!(parse_rational("-1.5e-1").unwrap(), ratio(-3, 20));
        assert_eq!(parse_rational("1e-9").unwrap(), ratio(1, 1_000_000_000));
        assert_eq!(parse_rational(".5").unwrap(), ratio(1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("").is_err());
        assert!(parse_rational(".").is_err());
    }

    #[test]
    fn surd_sign_is_exact() {
        // 2 + √3 − 15/4 ≈ −0.018
        let t = QuadraticSurd::new(ratio(-7, 4), int(1), 3);
        assert_eq!(t.signum(), Ordering::Less);
        // (2 + √3)² − 4(2 + √3) + 1 = 0
        let t = QuadraticSurd::new(int(2), int(1), 3);
        let four = QuadraticSurd::from_int(4);
        let one = QuadraticSurd::from_int(1);
        let q = t.times(&t).minus(&four.times(&t)).plus(&one);
        assert!(q.vanishes());
        let inv = one.over(&t);
        assert_eq!(inv, QuadraticSurd::new(int(2), int(-1), 3));
    }

    #[test]
    fn pi_multiples_cancel() {
        let a = PiMultiple::new(ratio(16, 1), 2);
        let b = PiMultiple::new(ratio(32, 1), 2);
        assert_eq!(a.div(&b).as_rational(), Some(&ratio(1, 2)));
        assert!((PiMultiple::new(int(12), 2).to_f64() - 12.0 * std::f64::consts::PI.powi(2)).abs() < 1e-12);
    }
}
