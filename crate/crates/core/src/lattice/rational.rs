//! Exact rationals in lowest terms.
//!
//! Thin wrapper over `num_rational::Ratio<i128>`; the wrapper pins the
//! floor/fractional-part convention used by the fusion center and the
//! textual `"p/q"` format used in matrix files.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::Zero;

use crate::error::{LatticeError, Result};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(Ratio<i128>);

impl Rational {
    pub fn new(numerator: i128, denominator: i128) -> Result<Self> {
        if denominator == 0 {
            return Err(LatticeError::Domain("zero denominator".into()));
        }
        Ok(Self(Ratio::new(numerator, denominator)))
    }

    pub fn from_integer(n: i128) -> Self {
        Self(Ratio::from_integer(n))
    }

    pub fn zero() -> Self {
        Self(Ratio::zero())
    }

    pub fn numerator(&self) -> i128 {
        *self.0.numer()
    }

    /// Always positive.
    pub fn denominator(&self) -> i128 {
        *self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn to_f64(&self) -> f64 {
        // Exact inputs below 2^53 give a correctly rounded quotient.
        self.numerator() as f64 / self.denominator() as f64
    }

    /// Largest integer not exceeding the value.
    pub fn floor(&self) -> i128 {
        Integer::div_floor(&self.numerator(), &self.denominator())
    }

    /// Fractional part in `[0, 1)`, so that `self = floor + fract` also for negatives.
    pub fn fract(&self) -> Self {
        *self - Self::from_integer(self.floor())
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(LatticeError::Domain("division by zero rational".into()));
        }
        Ok(Self(self.0 / other.0))
    }

    /// The exact dyadic value of a finite double, when it fits in `i128`.
    pub fn from_f64_exact(x: f64) -> Option<Self> {
        if !x.is_finite() {
            return None;
        }
        if x == 0.0 {
            return Some(Self::zero());
        }
        let bits = x.to_bits();
        let sign: i128 = if bits >> 63 == 0 { 1 } else { -1 };
        let raw_exp = ((bits >> 52) & 0x7ff) as i32;
        let frac = (bits & ((1u64 << 52) - 1)) as i128;
        let (mantissa, exp) = if raw_exp == 0 {
            (frac, -1074)
        } else {
            (frac | (1i128 << 52), raw_exp - 1075)
        };
        let tz = mantissa.trailing_zeros() as i32;
        let (mantissa, exp) = (mantissa >> tz, exp + tz);
        if exp >= 0 {
            if exp > 70 {
                return None;
            }
            Some(Self::from_integer(sign * (mantissa << exp)))
        } else {
            if -exp > 125 {
                return None;
            }
            Self::new(sign * mantissa, 1i128 << (-exp)).ok()
        }
    }
}

impl FromStr for Rational {
    type Err = LatticeError;

    /// Accepts `"p/q"`, plain integers and finite decimals such as `"1.01"`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || LatticeError::Parse(format!("not an exact rational: {s:?}"));
        if let Some((p, q)) = s.split_once('/') {
            let p: i128 = p.trim().parse().map_err(|_| bad())?;
            let q: i128 = q.trim().parse().map_err(|_| bad())?;
            return Self::new(p, q);
        }
        if let Some((int, frac)) = s.split_once('.') {
            if frac.is_empty() || !frac.bytes().all(|c| c.is_ascii_digit()) || frac.len() > 30 {
                return Err(bad());
            }
            let negative = int.starts_with('-');
            let int_part: i128 = match int {
                "" | "-" | "+" => 0,
                _ => int.parse().map_err(|_| bad())?,
            };
            let scale = 10i128.pow(frac.len() as u32);
            let frac_part: i128 = frac.parse().map_err(|_| bad())?;
            let magnitude = int_part.abs() * scale + frac_part;
            return Self::new(if negative { -magnitude } else { magnitude }, scale);
        }
        s.parse::<i128>().map(Self::from_integer).map_err(|_| bad())
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denominator() == 1 {
            write!(f, "{}", self.numerator())
        } else {
            write!(f, "{}/{}", self.numerator(), self.denominator())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add for Rational {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self(self.0 + rhs.0)
    }
}

impl Sub for Rational {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self(self.0 - rhs.0)
    }
}

impl Mul for Rational {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self(self.0 * rhs.0)
    }
}

impl Neg for Rational {
    type Output = Self;
    fn neg(self) -> Self {
        Self(-self.0)
    }
}

/// Least common multiple of positive integers; `lcm([]) = 1`.
pub fn lcm_all<I: IntoIterator<Item = i128>>(values: I) -> i128 {
    values.into_iter().fold(1i128, |acc, v| acc.lcm(&v))
}
