//! Scalar field abstraction shared by the exact and floating-point paths.

use std::fmt::{Debug, Display};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rational numbers with arbitrary-precision numerator and denominator.
pub type Rational = BigRational;

/// Field operations needed by polynomial algebra and dense elimination.
///
/// Implemented for [`Rational`] (exact certificates) and `f64` (assembly).
pub trait Scalar:
    Clone
    + Debug
    + Display
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
    + Send
    + Sync
    + 'static
{
    fn from_i64(v: i64) -> Self;

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_i64(num) / Self::from_i64(den)
    }

    fn from_bigint(v: &BigInt) -> Self;

    fn to_f64(&self) -> f64;

    /// Square root when it can be represented in this field.
    ///
    /// Rationals return `None`; callers then keep vectors unnormalised.
    fn sqrt_checked(&self) -> Option<Self>;

    /// Magnitude used to rank pivot candidates. Zero means unusable.
    fn pivot_weight(&self) -> f64;

    /// Treat as zero when deciding linear independence.
    fn is_negligible(&self, scale: f64) -> bool;

    fn is_positive(&self) -> bool;
}

impl Scalar for f64 {
    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn from_bigint(v: &BigInt) -> Self {
        v.to_f64().unwrap_or(f64::NAN)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn sqrt_checked(&self) -> Option<Self> {
        (*self >= 0.0).then(|| self.sqrt())
    }

    fn pivot_weight(&self) -> f64 {
        self.abs()
    }

    fn is_negligible(&self, scale: f64) -> bool {
        self.abs() <= 1e-12 * scale.max(f64::MIN_POSITIVE)
    }

    fn is_positive(&self) -> bool {
        *self > 0.0
    }
}

impl Scalar for Rational {
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn from_bigint(v: &BigInt) -> Self {
        BigRational::from_integer(v.clone())
    }

    fn to_f64(&self) -> f64 {
        rational_to_f64(self)
    }

    fn sqrt_checked(&self) -> Option<Self> {
        None
    }

    fn pivot_weight(&self) -> f64 {
        if self.is_zero() {
            0.0
        } else {
            // prefer short entries: they keep intermediate growth down
            1.0 / (1.0 + (self.numer().bits() + self.denom().bits()) as f64)
        }
    }

    fn is_negligible(&self, _scale: f64) -> bool {
        self.is_zero()
    }

    fn is_positive(&self) -> bool {
        Signed::is_positive(self)
    }
}

/// Converts without overflowing when numerator and denominator are both huge.
pub fn rational_to_f64(r: &Rational) -> f64 {
    if let (Some(n), Some(d)) = (r.numer().to_f64(), r.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    let shift = r.numer().bits().max(r.denom().bits()).saturating_sub(1000) as usize;
    let n = (r.numer() >> shift).to_f64().unwrap_or(0.0);
    let d = (r.denom() >> shift).to_f64().unwrap_or(f64::INFINITY);
    n / d
}

/// Formats a rational as `p/q`, or `p` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn binomial(a: i64, b: i64) -> u64 {
    if b < 0 || a < b || a < 0 {
        return 0;
    }
    let b = b.min(a - b);
    let mut acc: u64 = 1;
    for i in 0..b {
        acc = acc * (a - i) as u64 / (i + 1) as u64;
    }
    acc
}
