//! Exact scalar arithmetic: arbitrary-precision rationals, Gaussian
//! rationals and exact points of the unit circle.
//!
//! Design notes:
//! - `Rat` is a re-export of `num_rational::BigRational`; it already keeps
//!   fractions reduced with a positive denominator, which is the canonical
//!   form every hash/compare in this crate relies on.
//! - `GaussRat` is the field Q(i). It is the coefficient domain for every
//!   polynomial ring in the crate; no floating point exists anywhere.
//! - `UnitCirclePoint` wraps a `GaussRat` of norm exactly 1. Rational points
//!   of the circle are dense in it, so exact "angles" are produced from
//!   Pythagorean pairs (p, q) without ever touching transcendentals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

pub type Rat = BigRational;

/// Rational from an integer.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Rational from a numerator/denominator pair. Panics on zero denominator.
pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Exact square root of a nonnegative rational, if one exists.
pub fn rat_sqrt(r: &Rat) -> Option<Rat> {
    if r.is_negative() {
        return None;
    }
    let ns = r.numer().sqrt();
    let ds = r.denom().sqrt();
    if &(&ns * &ns) == r.numer() && &(&ds * &ds) == r.denom() {
        Some(Rat::new(ns, ds))
    } else {
        None
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("norm of {0} is {1}, not 1")]
    NotOnUnitCircle(GaussRat, Rat),
    #[error("Pythagorean parameters p = q = 0 do not define a circle point")]
    DegeneratePythagorean,
    #[error("cannot parse {0:?} as a rational")]
    BadRational(String),
}

/// An element a + bi of the field Q(i).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GaussRat {
    pub re: Rat,
    pub im: Rat,
}

impl GaussRat {
    pub fn new(re: Rat, im: Rat) -> Self {
        GaussRat { re, im }
    }

    pub fn from_rat(re: Rat) -> Self {
        GaussRat { re, im: Rat::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        GaussRat::from_rat(rat(n))
    }

    /// a/b + (c/d)i from integer parts. Panics on zero denominators.
    pub fn from_parts(a: i64, b: i64, c: i64, d: i64) -> Self {
        GaussRat::new(ratio(a, b), ratio(c, d))
    }

    pub fn zero() -> Self {
        GaussRat::from_int(0)
    }

    pub fn one() -> Self {
        GaussRat::from_int(1)
    }

    pub fn i() -> Self {
        GaussRat::new(Rat::zero(), Rat::one())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussRat::new(self.re.clone(), -self.im.clone())
    }

    /// The norm a^2 + b^2 (a nonnegative rational).
    pub fn norm_sq(&self) -> Rat {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let n = self.norm_sq();
        Ok(GaussRat::new(&self.re / &n, -(&self.im / &n)))
    }

    pub fn pow(&self, e: i64) -> Result<Self, ScalarError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut out = GaussRat::one();
        for _ in 0..e.unsigned_abs() {
            out = &out * &base;
        }
        Ok(out)
    }

    /// Exact square root in Q(i), if one exists. The returned root is the
    /// canonical branch: positive real part, or nonnegative imaginary part
    /// when the real part vanishes.
    pub fn sqrt(&self) -> Option<GaussRat> {
        if self.is_zero() {
            return Some(GaussRat::zero());
        }
        let n = rat_sqrt(&self.norm_sq())?;
        let x2 = (&self.re + &n) / rat(2);
        let x = rat_sqrt(&x2)?;
        let root = if x.is_zero() {
            // Purely negative real input: sqrt(-r) = sqrt(r) i.
            let y = rat_sqrt(&-self.re.clone())?;
            GaussRat::new(Rat::zero(), y)
        } else {
            let y = &self.im / (rat(2) * &x);
            GaussRat::new(x, y)
        };
        debug_assert_eq!(&(&root * &root), self);
        let canonical = if root.re.is_negative()
            || (root.re.is_zero() && root.im.is_negative())
        {
            -&root
        } else {
            root
        };
        Some(canonical)
    }
}

impl Add for &GaussRat {
    type Output = GaussRat;
    fn add(self, rhs: &GaussRat) -> GaussRat {
        GaussRat::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for &GaussRat {
    type Output = GaussRat;
    fn sub(self, rhs: &GaussRat) -> GaussRat {
        GaussRat::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for &GaussRat {
    type Output = GaussRat;
    fn mul(self, rhs: &GaussRat) -> GaussRat {
        GaussRat::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Div for &GaussRat {
    type Output = GaussRat;
    fn div(self, rhs: &GaussRat) -> GaussRat {
        let inv = rhs.inv().expect("division by zero GaussRat");
        self * &inv
    }
}

impl Neg for &GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat::new(-self.re.clone(), -self.im.clone())
    }
}

impl Neg for GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        -&self
    }
}

fn fmt_rat_coeff(r: &Rat) -> String {
    r.to_string()
}

impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut out = String::new();
        if !self.re.is_zero() {
            out.push_str(&fmt_rat_coeff(&self.re));
        }
        if !self.im.is_zero() {
            if !self.re.is_zero() && !self.im.is_negative() {
                out.push('+');
            }
            if self.im.is_one() {
                out.push('i');
            } else if (-self.im.clone()).is_one() {
                out.push_str("-i");
            } else {
                out.push_str(&fmt_rat_coeff(&self.im));
                out.push('i');
            }
        }
        write!(f, "{out}")
    }
}

fn parse_rat(s: &str) -> Result<Rat, ScalarError> {
    Rat::from_str(s.trim()).map_err(|_| ScalarError::BadRational(s.to_string()))
}

#[derive(Serialize, Deserialize)]
struct GaussRatRepr {
    re: String,
    im: String,
}

impl Serialize for GaussRat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        GaussRatRepr {
            re: self.re.to_string(),
            im: self.im.to_string(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for GaussRat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = GaussRatRepr::deserialize(d)?;
        let re = parse_rat(&repr.re).map_err(serde::de::Error::custom)?;
        let im = parse_rat(&repr.im).map_err(serde::de::Error::custom)?;
        Ok(GaussRat::new(re, im))
    }
}

/// A Gaussian rational of norm exactly 1.
///
/// Invariant: `value.norm_sq() == 1`, checked at construction.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct UnitCirclePoint(GaussRat);

impl UnitCirclePoint {
    pub fn new(value: GaussRat) -> Result<Self, ScalarError> {
        let n = value.norm_sq();
        if !n.is_one() {
            return Err(ScalarError::NotOnUnitCircle(value, n));
        }
        Ok(UnitCirclePoint(value))
    }

    pub fn one() -> Self {
        UnitCirclePoint(GaussRat::one())
    }

    pub fn minus_one() -> Self {
        UnitCirclePoint(GaussRat::from_int(-1))
    }

    pub fn i() -> Self {
        UnitCirclePoint(GaussRat::i())
    }

    /// ((p^2 - q^2) + 2pq i) / (p^2 + q^2), the rational point of the circle
    /// attached to the Pythagorean pair (p, q).
    pub fn from_pythagorean(p: i64, q: i64) -> Result<Self, ScalarError> {
        if p == 0 && q == 0 {
            return Err(ScalarError::DegeneratePythagorean);
        }
        let (p, q) = (rat(p), rat(q));
        let den = &p * &p + &q * &q;
        let re = (&p * &p - &q * &q) / &den;
        let im = rat(2) * &p * &q / &den;
        let value = GaussRat::new(re, im);
        debug_assert!(value.norm_sq().is_one());
        Ok(UnitCirclePoint(value))
    }

    pub fn value(&self) -> &GaussRat {
        &self.0
    }

    pub fn into_value(self) -> GaussRat {
        self.0
    }

    /// On the unit circle the inverse is the conjugate.
    pub fn inv(&self) -> Self {
        UnitCirclePoint(self.0.conj())
    }

    pub fn neg(&self) -> Self {
        UnitCirclePoint(-&self.0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        UnitCirclePoint(&self.0 * &other.0)
    }
}

impl fmt::Display for UnitCirclePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl<'de> Deserialize<'de> for UnitCirclePoint {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let g = GaussRat::deserialize(d)?;
        UnitCirclePoint::new(g).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_field_ops() {
        let a = GaussRat::from_parts(3, 5, 4, 5);
        let b = GaussRat::from_parts(5, 13, 12, 13);
        let prod = &a * &b;
        assert_eq!(prod.norm_sq(), Rat::one());
        let quot = &prod / &b;
        assert_eq!(quot, a);
        let inv = a.inv().unwrap();
        assert!((&a * &inv).is_one());
    }

    #[test]
    fn conjugation_is_an_involution_and_multiplicative() {
        let a = GaussRat::from_parts(2, 3, -7, 4);
        let b = GaussRat::from_parts(-1, 2, 5, 6);
        assert_eq!(a.conj().conj(), a);
        assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
    }

    #[test]
    fn zero_has_no_inverse() {
        assert_eq!(GaussRat::zero().inv(), Err(ScalarError::DivisionByZero));
    }

    #[test]
    fn rational_square_roots() {
        assert_eq!(rat_sqrt(&ratio(9, 4)), Some(ratio(3, 2)));
        assert_eq!(rat_sqrt(&rat(2)), None);
        assert_eq!(rat_sqrt(&rat(-4)), None);
        assert_eq!(rat_sqrt(&rat(0)), Some(rat(0)));
    }

    #[test]
    fn gaussian_square_roots() {
        // (1+i)^2 = 2i.
        let two_i = GaussRat::new(rat(0), rat(2));
        let r = two_i.sqrt().unwrap();
        assert_eq!(&r * &r, two_i);
        // -9/4 has root (3/2)i.
        let m = GaussRat::from_rat(ratio(-9, 4));
        let r = m.sqrt().unwrap();
        assert_eq!(r, GaussRat::new(rat(0), ratio(3, 2)));
        // 2 is not a square in Q(i).
        assert_eq!(GaussRat::from_int(2).sqrt(), None);
        // i is not a square in Q(i): would need norm sqrt(1) and x^2 = 1/2.
        assert_eq!(GaussRat::i().sqrt(), None);
    }

    #[test]
    fn pythagorean_points_sit_on_the_circle() {
        for (p, q) in [(2, 1), (3, 2), (5, 3), (4, 1), (1, 0), (0, 1), (-3, 7)] {
            let u = UnitCirclePoint::from_pythagorean(p, q).unwrap();
            assert!(u.value().norm_sq().is_one());
            assert!(u.value().mul(&u.inv().0.clone()).is_one());
        }
        assert_eq!(
            UnitCirclePoint::from_pythagorean(2, 1).unwrap().value(),
            &GaussRat::from_parts(3, 5, 4, 5)
        );
        assert!(UnitCirclePoint::from_pythagorean(0, 0).is_err());
    }

    #[test]
    fn unit_circle_rejects_off_circle_values() {
        assert!(UnitCirclePoint::new(GaussRat::from_int(2)).is_err());
        assert!(UnitCirclePoint::new(GaussRat::from_parts(1, 2, 1, 2)).is_err());
    }

    #[test]
    fn serde_round_trip_uses_decimal_strings() {
        let a = GaussRat::from_parts(3, 5, -4, 5);
        let js = serde_json::to_string(&a).unwrap();
        assert_eq!(js, r#"{"re":"3/5","im":"-4/5"}"#);
        let back: GaussRat = serde_json::from_str(&js).unwrap();
        assert_eq!(back, a);
        let u = UnitCirclePoint::from_pythagorean(3, 2).unwrap();
        let js = serde_json::to_string(&u).unwrap();
        let back: UnitCirclePoint = serde_json::from_str(&js).unwrap();
        assert_eq!(back, u);
    }

    #[test]
    fn display_forms() {
        assert_eq!(GaussRat::from_parts(3, 5, 4, 5).to_string(), "3/5+4/5i");
        assert_eq!(GaussRat::from_parts(3, 5, -4, 5).to_string(), "3/5-4/5i");
        assert_eq!(GaussRat::i().to_string(), "i");
        assert_eq!((-GaussRat::i()).to_string(), "-i");
        assert_eq!(GaussRat::zero().to_string(), "0");
        assert_eq!(GaussRat::from_int(-2).to_string(), "-2");
    }
}
