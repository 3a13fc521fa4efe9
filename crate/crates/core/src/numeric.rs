//! Scalar abstraction for the closed-form layer, plus exact-rational helpers.
//!
//! The expectation formulas are plain field arithmetic, so they are written
//! once over [`Scalar`] and instantiated with [`Exact`](crate::Exact) where
//! results must be exact, or with `f64`/`f32` for quick approximate sweeps.

use std::fmt;
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::Ratio;
use num::traits::{FromPrimitive, Num, Signed, ToPrimitive};

use crate::Exact;

/// Numeric scalar the analytics are generic over.
///
/// Satisfied by `f32`, `f64` and by [`Exact`](crate::Exact) (the
/// arbitrary-precision rational used everywhere a result feeds an exact
/// comparison).
pub trait Scalar: Num + FromPrimitive + PartialOrd + Clone {}

impl<T> Scalar for T where T: Num + FromPrimitive + PartialOrd + Clone {}

/// Converts a non-negative integer into the scalar type, erroring on scalars
/// that cannot represent it at all (floats round instead).
pub(crate) fn scalar_from_u128<T: Scalar>(value: u128) -> Result<T, crate::AnalyticsError> {
    T::from_u128(value)
        .ok_or_else(|| crate::AnalyticsError::Unrepresentable(value.to_string()))
}

/// `base^exp` in 128-bit arithmetic, `None` on overflow.
pub fn checked_pow_u128(base: u32, exp: u32) -> Option<u128> {
    (base as u128).checked_pow(exp)
}

/// Walk-depth multiplier `e >= 1`, kept as an exact non-negative rational so
/// that the integrality of the walk cutoff `e * goal_level` can be decided
/// without floating-point error.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DepthError(Ratio<u64>);

impl DepthError {
    /// Exact value `numer/denom`; rejects `denom == 0` and values below one.
    pub fn new(numer: u64, denom: u64) -> Result<Self, DepthErrorParse> {
        if denom == 0 {
            return Err(DepthErrorParse::ZeroDenominator);
        }
        if numer < denom {
            return Err(DepthErrorParse::BelowOne(format!("{numer}/{denom}")));
        }
        Ok(Self(Ratio::new(numer, denom)))
    }

    /// The unit depth error `e = 1`.
    pub fn one() -> Self {
        Self(Ratio::from_integer(1))
    }

    pub fn numer(&self) -> u64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> u64 {
        *self.0.denom()
    }

    pub fn is_one(&self) -> bool {
        self.0 == Ratio::from_integer(1)
    }

    /// The walk cutoff `t = e * goal_level`, or `None` when that product is
    /// not an integer (such configurations are rejected upstream).
    pub fn walk_depth(&self, goal_level: u32) -> Option<u64> {
        let scaled = self.numer() as u128 * goal_level as u128;
        let denom = self.denom() as u128;
        if scaled % denom != 0 {
            return None;
        }
        u64::try_from(scaled / denom).ok()
    }

    /// Evaluates `e` in the scalar type.
    pub fn to_scalar<T: Scalar>(&self) -> Result<T, crate::AnalyticsError> {
        let numer: T = scalar_from_u128(self.numer() as u128)?;
        let denom: T = scalar_from_u128(self.denom() as u128)?;
        Ok(numer / denom)
    }
}

impl fmt::Display for DepthError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom() == 1 {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

/// Parse failure for [`DepthError`].
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DepthErrorParse {
    #[error("depth error must be at least 1, got {0}")]
    BelowOne(String),
    #[error("depth error has a zero denominator")]
    ZeroDenominator,
    #[error("cannot parse depth error from `{0}`")]
    Unparseable(String),
}

impl FromStr for DepthError {
    type Err = DepthErrorParse;

    /// Accepts an integer (`"2"`), a fraction (`"3/2"`), or a finite decimal
    /// (`"1.5"`); all are converted exactly.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || DepthErrorParse::Unparseable(s.to_string());
        if let Some((num, den)) = s.split_once('/') {
            let num: u64 = num.trim().parse().map_err(|_| bad())?;
            let den: u64 = den.trim().parse().map_err(|_| bad())?;
            return Self::new(num, den);
        }
        if let Some((int, frac)) = s.split_once('.') {
            let int: u64 = if int.is_empty() {
                0
            } else {
                int.parse().map_err(|_| bad())?
            };
            if frac.is_empty() || frac.len() > 18 || !frac.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            let scale = 10u64.pow(frac.len() as u32);
            let frac: u64 = frac.parse().map_err(|_| bad())?;
            let numer = int
                .checked_mul(scale)
                .and_then(|v| v.checked_add(frac))
                .ok_or_else(bad)?;
            return Self::new(numer, scale);
        }
        let numer: u64 = s.parse().map_err(|_| bad())?;
        Self::new(numer, 1)
    }
}

/// Renders an exact rational as a fixed-point decimal with `digits` fractional
/// digits, rounding ties half-to-even.
pub fn decimal_string(value: &Exact, digits: usize) -> String {
    let negative = value.is_negative();
    let numer = value.numer().abs();
    let denom = value.denom().abs();
    let scale = BigInt::from(10u32).pow(digits as u32);
    let scaled = numer * &scale;
    let mut quotient = &scaled / &denom;
    let remainder = &scaled % &denom;
    let doubled = &remainder * BigInt::from(2);
    if doubled > denom || (doubled == denom && (&quotient % BigInt::from(2)).to_u8() == Some(1)) {
        quotient += 1;
    }
    let int_part = &quotient / &scale;
    let frac_part = &quotient % &scale;
    let sign = if negative && quotient != BigInt::from(0) {
        "-"
    } else {
        ""
    };
    if digits == 0 {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac_part:0>width$}", width = digits)
    }
}

/// Parses the `Display` form of an exact rational (`"num/den"` or `"num"`).
pub fn parse_exact(s: &str) -> Option<Exact> {
    Exact::from_str(s.trim()).ok()
}
