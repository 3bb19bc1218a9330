//! Real quantities with an exact rational representation and a flagged
//! floating fallback.
//!
//! Exact values are `BigRational`s and compare without tolerance. Any
//! operation touching an approximate operand yields an approximate result,
//! and comparisons involving one use a [`Tolerance`].

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::GeodesyError;

/// Default absolute tolerance for approximate comparisons.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Absolute tolerance used when at least one side of a comparison is
/// approximate.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct Tolerance(pub f64);

impl Tolerance {
    pub fn new(tol: f64) -> Self {
        Tolerance(tol.abs())
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn scaled(self, factor: f64) -> Self {
        Tolerance(self.0 * factor)
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance(DEFAULT_TOLERANCE)
    }
}

#[derive(Clone, Debug)]
pub enum Scalar {
    Exact(BigRational),
    Approx(f64),
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Exact(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::Exact(BigRational::one())
    }

    pub fn int(n: i64) -> Self {
        Scalar::Exact(BigRational::from_integer(BigInt::from(n)))
    }

    /// The exact rational `num/den`. Panics if `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Self {
        Scalar::Exact(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn approx(v: f64) -> Self {
        Scalar::Approx(v)
    }

    /// Exact dyadic rational equal to the given finite float.
    pub fn from_f64_exact(v: f64) -> Option<Self> {
        BigRational::from_float(v).map(Scalar::Exact)
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::Exact(_))
    }

    pub fn as_exact(&self) -> Option<&BigRational> {
        match self {
            Scalar::Exact(q) => Some(q),
            Scalar::Approx(_) => None,
        }
    }

    pub fn to_exact(&self) -> Result<BigRational, GeodesyError> {
        self.as_exact()
            .cloned()
            .ok_or_else(|| GeodesyError::NotExact(format!("approximate value {self}")))
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Exact(q) => rational_to_f64(q),
            Scalar::Approx(v) => *v,
        }
    }

    pub fn abs(&self) -> Scalar {
        match self {
            Scalar::Exact(q) => Scalar::Exact(q.abs()),
            Scalar::Approx(v) => Scalar::Approx(v.abs()),
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Exact(q) => q.is_negative(),
            Scalar::Approx(v) => *v < 0.0,
        }
    }

    /// Square root; stays exact when numerator and denominator are perfect
    /// squares.
    pub fn sqrt(&self) -> Scalar {
        match self {
            Scalar::Exact(q) if !q.is_negative() => {
                let (n, d) = (q.numer(), q.denom());
                let (rn, rd) = (n.sqrt(), d.sqrt());
                if &(&rn * &rn) == n && &(&rd * &rd) == d {
                    Scalar::Exact(BigRational::new(rn, rd))
                } else {
                    Scalar::Approx(rational_to_f64(q).sqrt())
                }
            }
            other => Scalar::Approx(other.to_f64().sqrt()),
        }
    }

    pub fn powf(&self, p: f64) -> Scalar {
        Scalar::Approx(self.to_f64().powf(p))
    }

    pub fn is_zero_tol(&self, tol: Tolerance) -> bool {
        match self {
            Scalar::Exact(q) => q.is_zero(),
            Scalar::Approx(v) => v.abs() <= tol.0,
        }
    }

    /// Three-way comparison: exact when both sides are exact, otherwise
    /// values within `tol` of each other compare equal.
    pub fn cmp_tol(&self, other: &Scalar, tol: Tolerance) -> Ordering {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => a.cmp(b),
            _ => {
                let (a, b) = (self.to_f64(), other.to_f64());
                if (a - b).abs() <= tol.0 {
                    Ordering::Equal
                } else if a < b {
                    Ordering::Less
                } else {
                    Ordering::Greater
                }
            }
        }
    }

    pub fn eq_tol(&self, other: &Scalar, tol: Tolerance) -> bool {
        self.cmp_tol(other, tol) == Ordering::Equal
    }

    pub fn le_tol(&self, other: &Scalar, tol: Tolerance) -> bool {
        self.cmp_tol(other, tol) != Ordering::Greater
    }

    pub fn min(self, other: Scalar) -> Scalar {
        if other < self {
            other
        } else {
            self
        }
    }

    pub fn max(self, other: Scalar) -> Scalar {
        if other > self {
            other
        } else {
            self
        }
    }

    /// `1 / 2^k`, exact.
    pub fn dyadic(k: u32) -> Scalar {
        Scalar::Exact(BigRational::new(BigInt::one(), BigInt::one() << k))
    }
}

pub(crate) fn rational_to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        // numerator/denominator too large for f64 individually
        let shift = q.numer().bits().max(q.denom().bits()).saturating_sub(1000);
        let n = (q.numer() >> shift).to_f64().unwrap_or(f64::NAN);
        let d = (q.denom() >> shift).to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

impl From<BigRational> for Scalar {
    fn from(q: BigRational) -> Self {
        Scalar::Exact(q)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::int(n)
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        self.partial_cmp(other) == Some(Ordering::Equal)
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Some(a.cmp(b)),
            _ => self.to_f64().partial_cmp(&other.to_f64()),
        }
    }
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl<'a> $trait<&'a Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                match (self, rhs) {
                    (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a $op b),
                    _ => Scalar::Approx(self.to_f64() $op rhs.to_f64()),
                }
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                match (self, rhs) {
                    (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a $op b),
                    (a, b) => Scalar::Approx(a.to_f64() $op b.to_f64()),
                }
            }
        }
        impl<'a> $trait<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                &self $op rhs
            }
        }
        impl<'a> $trait<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self $op &rhs
            }
        }
    };
}

scalar_binop!(Add, add, +);
scalar_binop!(Sub, sub, -);
scalar_binop!(Mul, mul, *);
scalar_binop!(Div, div, /);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Exact(q) => Scalar::Exact(-q),
            Scalar::Approx(v) => Scalar::Approx(-v),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -self.clone()
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}

/// Formats an exact rational as `p/q` (always with a denominator).
pub fn format_rational(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(q) => write!(f, "{}", format_rational(q)),
            Scalar::Approx(v) => write!(f, "{v:?}"),
        }
    }
}

/// Parses `p/q`, an integer, or a decimal literal (with optional exponent)
/// into an exact rational.
pub fn parse_rational(text: &str) -> Result<BigRational, GeodesyError> {
    let err = || GeodesyError::ParseScalar(text.to_string());
    let s = text.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| err())?;
        let d: BigInt = d.trim().parse().map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        return Ok(BigRational::new(n, d));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| err())?),
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(err());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(err());
    }
    let all: BigInt = format!("{int_part}{frac_part}0").parse().map_err(|_| err())?;
    let scale = exponent - frac_part.len() as i32 - 1;
    let ten = BigInt::from(10);
    let mut q = BigRational::from_integer(all);
    if scale >= 0 {
        q *= BigRational::from_integer(num_traits::pow(ten, scale as usize));
    } else {
        q /= BigRational::from_integer(num_traits::pow(ten, (-scale) as usize));
    }
    Ok(if negative { -q } else { q })
}

impl FromStr for Scalar {
    type Err = GeodesyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_rational(s).map(Scalar::Exact)
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Scalar::Exact(q) => serializer.serialize_str(&format_rational(q)),
            Scalar::Approx(v) => serializer.serialize_f64(*v),
        }
    }
}

struct ScalarVisitor;

impl Visitor<'_> for ScalarVisitor {
    type Value = Scalar;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("a rational string such as \"3/4\" or a JSON number")
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<Scalar, E> {
        v.parse().map_err(|_| E::custom(format!("invalid rational {v:?}")))
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<Scalar, E> {
        Ok(Scalar::int(v))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<Scalar, E> {
        Ok(Scalar::Exact(BigRational::from_integer(BigInt::from(v))))
    }

    fn visit_f64<E: de::Error>(self, v: f64) -> Result<Scalar, E> {
        Ok(Scalar::Approx(v))
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        deserializer.deserialize_any(ScalarVisitor)
    }
}

/// Serde adapter for exact rationals stored as `"p/q"` strings.
pub mod rational_serde {
    use super::*;

    pub fn serialize<S: Serializer>(q: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        match Scalar::deserialize(d)? {
            Scalar::Exact(q) => Ok(q),
            Scalar::Approx(v) => Err(de::Error::custom(format!(
                "expected an exact rational string, got the float {v}"
            ))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_decimals_exactly() {
        assert_eq!("3/4".parse::<Scalar>().unwrap(), Scalar::ratio(3, 4));
        assert_eq!("-6/8".parse::<Scalar>().unwrap(), Scalar::ratio(-3, 4));
        assert_eq!("0.1".parse::<Scalar>().unwrap(), Scalar::ratio(1, 10));
        assert_eq!("-2.5e-1".parse::<Scalar>().unwrap(), Scalar::ratio(-1, 4));
        assert_eq!("12".parse::<Scalar>().unwrap(), Scalar::int(12));
        assert_eq!(".5".parse::<Scalar>().unwrap(), Scalar::ratio(1, 2));
        assert!("1/0".parse::<Scalar>().is_err());
        assert!("abc".parse::<Scalar>().is_err());
        assert!("".parse::<Scalar>().is_err());
    }

    #[test]
    fn exact_arithmetic_stays_exact() {
        let a = Scalar::ratio(1, 3);
        let b = Scalar::ratio(1, 6);
        assert_eq!(&a + &b, Scalar::ratio(1, 2));
        assert!((&a * &b).is_exact());
        let mixed = &a + &Scalar::approx(0.5);
        assert!(!mixed.is_exact());
    }

    #[test]
    fn sqrt_exact_for_perfect_squares() {
        assert_eq!(Scalar::ratio(9, 16).sqrt(), Scalar::ratio(3, 4));
        assert!(Scalar::int(2)
            .sqrt()
            .eq_tol(&Scalar::approx(2f64.sqrt()), Tolerance::default()));
        assert!(!Scalar::int(2).sqrt().is_exact());
    }

    #[test]
    fn tolerance_only_applies_to_approximate_values() {
        let tol = Tolerance::default();
        let a = Scalar::ratio(1, 1_000_000_000_000);
        assert_ne!(a.cmp_tol(&Scalar::zero(), tol), Ordering::Equal);
        assert!(Scalar::approx(1e-12).is_zero_tol(tol));
    }

    #[test]
    fn json_roundtrip_preserves_mode() {
        let values = vec![Scalar::ratio(-7, 3), Scalar::approx(0.25), Scalar::int(1)];
        let text = serde_json::to_string(&values).unwrap();
        assert_eq!(text, r#"["-7/3",0.25,"1/1"]"#);
        let back: Vec<Scalar> = serde_json::from_str(&text).unwrap();
        assert_eq!(back, values);
        assert!(back[0].is_exact() && !back[1].is_exact());
    }
}
