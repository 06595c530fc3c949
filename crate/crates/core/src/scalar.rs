//! Scalar abstraction shared by the linear algebra, polynomial and Lie-algebra
//! layers.
//!
//! Exact types (`BigRational`, `Rational64`, quadratic field elements) compare
//! against zero exactly; floating-point types use an absolute/relative
//! tolerance scaled by the magnitude of the data they came from.

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Tolerance used for all archimedean (floating-point) checks.
pub const ARCH_TOL: f64 = 1e-9;

/// A field-like scalar: exact or floating point.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
{
    /// Tolerance relative to a data scale; `0.0` for exact types.
    const TOLERANCE: f64;

    fn from_i64(n: i64) -> Self;

    fn from_rational(q: &BigRational) -> Self;

    /// Absolute value, approximated as `f64`. Used for pivot selection and
    /// residual reporting only.
    fn magnitude(&self) -> f64;

    fn is_exact() -> bool {
        Self::TOLERANCE == 0.0
    }

    /// Zero test. Exact for exact types; `|x| <= TOLERANCE * max(1, scale)`
    /// otherwise.
    fn is_negligible(&self, scale: f64) -> bool {
        if Self::is_exact() {
            self.is_zero()
        } else {
            self.magnitude() <= Self::TOLERANCE * scale.max(1.0)
        }
    }
}

/// Scalars carrying a total order (needed for definiteness tests).
pub trait OrderedScalar: Scalar + PartialOrd {}

impl<T: Scalar + PartialOrd> OrderedScalar for T {}

impl Scalar for f64 {
    const TOLERANCE: f64 = ARCH_TOL;

    fn from_i64(n: i64) -> Self {
        n as f64
    }

    fn from_rational(q: &BigRational) -> Self {
        q.to_f64().unwrap_or(f64::NAN)
    }

    fn magnitude(&self) -> f64 {
        self.abs()
    }
}

impl Scalar for f32 {
    const TOLERANCE: f64 = 1e-4;

    fn from_i64(n: i64) -> Self {
        n as f32
    }

    fn from_rational(q: &BigRational) -> Self {
        q.to_f32().unwrap_or(f32::NAN)
    }

    fn magnitude(&self) -> f64 {
        self.abs() as f64
    }
}

impl Scalar for BigRational {
    const TOLERANCE: f64 = 0.0;

    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn from_rational(q: &BigRational) -> Self {
        q.clone()
    }

    fn magnitude(&self) -> f64 {
        self.abs().to_f64().unwrap_or(f64::INFINITY)
    }
}

impl Scalar for Rational64 {
    const TOLERANCE: f64 = 0.0;

    fn from_i64(n: i64) -> Self {
        Rational64::from_integer(n)
    }

    /// Panics if the value does not fit in 64-bit numerator/denominator.
    fn from_rational(q: &BigRational) -> Self {
        let n = q.numer().to_i64().expect("numerator overflows i64");
        let d = q.denom().to_i64().expect("denominator overflows i64");
        Rational64::new(n, d)
    }

    fn magnitude(&self) -> f64 {
        self.abs().to_f64().unwrap_or(f64::INFINITY)
    }
}

/// Build a `BigRational` from a small fraction.
pub fn q(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Build an integral `BigRational`.
pub fn qi(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Parse `"p"`, `"p/q"` or a decimal literal into an exact rational.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(BigRational::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let neg = int.starts_with('-');
        let int_digits = int.trim_start_matches(['-', '+']);
        if !frac.chars().all(|c| c.is_ascii_digit()) {
            return None;
        }
        let digits = format!("{}{}", if int_digits.is_empty() { "0" } else { int_digits }, frac);
        let mut n: BigInt = digits.parse().ok()?;
        if neg {
            n = -n;
        }
        let d = num_traits::pow(BigInt::from(10), frac.len());
        return Some(BigRational::new(n, d));
    }
    let n: BigInt = s.parse().ok()?;
    Some(BigRational::from_integer(n))
}

/// `Some(n)` when the rational is an integer.
pub fn as_integer(x: &BigRational) -> Option<BigInt> {
    if x.is_integer() {
        Some(x.to_integer())
    } else {
        None
    }
}
