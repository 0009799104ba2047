//! Scalar fields used throughout the crate.
//!
//! Every algebraic object is generic over [`Scalar`]. Two implementations are
//! provided: exact rationals ([`Q`]) and `f64`. Exact arithmetic makes every
//! identity check a literal zero test; floating arithmetic trades that for
//! speed on large algebras.

use std::fmt::Debug;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rational numbers.
pub type Q = BigRational;

/// Builds the rational `num / den`.
pub fn q(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

/// Builds an integral rational.
pub fn qi(v: i64) -> Q {
    Q::from_integer(BigInt::from(v))
}

/// Formats a rational as `p/q`, always including the denominator.
pub fn format_rational(v: &Q) -> String {
    format!("{}/{}", v.numer(), v.denom())
}

/// Parses `p/q` or a bare integer.
pub fn parse_rational(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Q::new(n, d))
        }
        None => s.parse::<BigInt>().ok().map(Q::from_integer),
    }
}

/// Returns the rational as an `i64` if it is an integer that fits.
pub fn rational_to_i64(v: &Q) -> Option<i64> {
    if v.is_integer() {
        v.to_integer().to_i64()
    } else {
        None
    }
}

/// A field of scalars with enough structure for the curvature computations.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + AddAssign
    + SubAssign
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
{
    /// True for exact arithmetic, where identities are checked by zero tests.
    const EXACT: bool;

    fn from_rational(v: &Q) -> Self;

    fn from_i64(v: i64) -> Self;

    fn to_f64(&self) -> f64;

    /// `self += a * b`
    fn add_prod(&mut self, a: &Self, b: &Self);

    /// `self -= a * b`
    fn sub_prod(&mut self, a: &Self, b: &Self);

    fn mul_ref(&self, other: &Self) -> Self;

    /// Zero test used for rank decisions. Exact scalars ignore `scale`;
    /// floating scalars compare against `NEGLIGIBLE * max(scale, 1)`.
    fn is_negligible(&self, scale: f64) -> bool;

    fn is_positive(&self, scale: f64) -> bool {
        !self.is_negligible(scale) && self.to_f64() > 0.0
    }

    fn abs_f64(&self) -> f64 {
        self.to_f64().abs()
    }

    /// Square root, available only in floating mode.
    fn sqrt(&self) -> Option<Self>;
}

/// Relative threshold below which a float is treated as zero in rank decisions.
pub const NEGLIGIBLE: f64 = 1e-10;

impl Scalar for Q {
    const EXACT: bool = true;

    fn from_rational(v: &Q) -> Self {
        v.clone()
    }

    fn from_i64(v: i64) -> Self {
        qi(v)
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn add_prod(&mut self, a: &Self, b: &Self) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        *self += a * b;
    }

    fn sub_prod(&mut self, a: &Self, b: &Self) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        *self -= a * b;
    }

    fn mul_ref(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Q::zero();
        }
        self * other
    }

    fn is_negligible(&self, _scale: f64) -> bool {
        self.is_zero()
    }

    fn is_positive(&self, _scale: f64) -> bool {
        Signed::is_positive(self)
    }

    fn sqrt(&self) -> Option<Self> {
        None
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_rational(v: &Q) -> Self {
        ToPrimitive::to_f64(v).unwrap_or(f64::NAN)
    }

    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn add_prod(&mut self, a: &Self, b: &Self) {
        *self += a * b;
    }

    fn sub_prod(&mut self, a: &Self, b: &Self) {
        *self -= a * b;
    }

    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }

    fn is_negligible(&self, scale: f64) -> bool {
        self.abs() <= NEGLIGIBLE * scale.max(1.0)
    }

    fn sqrt(&self) -> Option<Self> {
        (*self >= 0.0).then(|| f64::sqrt(*self))
    }
}

/// Which arithmetic a computation ran in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScalarMode {
    Exact,
    Float,
}

impl ScalarMode {
    pub fn of<S: Scalar>() -> Self {
        if S::EXACT {
            ScalarMode::Exact
        } else {
            ScalarMode::Float
        }
    }
}

impl std::fmt::Display for ScalarMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ScalarMode::Exact => f.write_str("exact"),
            ScalarMode::Float => f.write_str("float"),
        }
    }
}

impl std::str::FromStr for ScalarMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "exact" => Ok(ScalarMode::Exact),
            "float" => Ok(ScalarMode::Float),
            other => Err(format!("unknown scalar mode {other:?} (expected exact|float)")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_text_round_trip() {
        let v = q(-1, 4);
        assert_eq!(format_rational(&v), "-1/4");
        assert_eq!(parse_rational("-1/4"), Some(v));
        assert_eq!(parse_rational("3"), Some(qi(3)));
        assert_eq!(format_rational(&qi(3)), "3/1");
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
    }

    #[test]
    fn float_negligible_is_relative() {
        assert!(1e-12_f64.is_negligible(1.0));
        assert!(!1e-6_f64.is_negligible(1.0));
        assert!(1e-8_f64.is_negligible(1e3));
    }
}
