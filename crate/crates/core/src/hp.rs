//! Fixed-point decimals for evaluating fractional powers of counts.
//!
//! Values are stored as a truncated mantissa `m` meaning `m / 10^digits`.
//! Fractional powers of nonnegative rationals are computed with exact
//! integer k-th roots, so every printed digit is correct (truncated).

use std::fmt;

use num_bigint::{BigInt, Sign};
use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};

use crate::rational::Rational;

pub const DEFAULT_DIGITS: u32 = 50;
const GUARD: u32 = 12;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct HpDecimal {
    mantissa: BigInt,
    digits: u32,
}

fn pow10(k: u32) -> BigInt {
    num_traits::pow(BigInt::from(10u32), k as usize)
}

impl HpDecimal {
    pub fn from_rational(r: &Rational, digits: u32) -> Self {
        let m = (r.numer() * pow10(digits)) / r.denom();
        HpDecimal { mantissa: m, digits }
    }

    pub fn from_integer(n: u128, digits: u32) -> Self {
        HpDecimal {
            mantissa: BigInt::from(n) * pow10(digits),
            digits,
        }
    }

    /// `base^(p/q)` for `base >= 0`, `q > 0`; truncated to `digits`.
    pub fn pow_ratio(base: &Rational, p: u32, q: u32, digits: u32) -> Self {
        assert!(q > 0, "zero root index");
        assert!(!base.is_negative(), "negative base");
        if base.is_zero() {
            return HpDecimal {
                mantissa: if p == 0 {
                    pow10(digits)
                } else {
                    BigInt::zero()
                },
                digits,
            };
        }
        // floor((n^p / d^p)^(1/q) * 10^digits) = floor(root_q(n^p * 10^(digits*q) / d^p))
        let n = num_traits::pow(base.numer().clone(), p as usize);
        let d = num_traits::pow(base.denom().clone(), p as usize);
        let scaled = n * pow10(digits * q) / d;
        let mag = scaled.magnitude().nth_root(q);
        HpDecimal {
            mantissa: BigInt::from_biguint(Sign::Plus, mag),
            digits,
        }
    }

    /// `base^(p/q)` for a signed rational exponent.
    pub fn pow_rational(base: &Rational, exp: &Rational, digits: u32) -> Self {
        let p: u32 = exp.numer().magnitude().try_into().expect("exponent numerator too large");
        let q: u32 = exp.denom().try_into().expect("exponent denominator too large");
        if exp.is_negative() {
            let pos = Self::pow_ratio(base, p, q, digits + GUARD);
            HpDecimal::one(digits + GUARD).div(&pos).truncate(digits)
        } else {
            Self::pow_ratio(base, p, q, digits)
        }
    }

    pub fn one(digits: u32) -> Self {
        HpDecimal {
            mantissa: pow10(digits),
            digits,
        }
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn truncate(&self, digits: u32) -> Self {
        if digits >= self.digits {
            return HpDecimal {
                mantissa: &self.mantissa * pow10(digits - self.digits),
                digits,
            };
        }
        HpDecimal {
            mantissa: &self.mantissa / pow10(self.digits - digits),
            digits,
        }
    }

    fn align(&self, other: &Self) -> (BigInt, BigInt, u32) {
        let d = self.digits.max(other.digits);
        (
            self.truncate(d).mantissa,
            other.truncate(d).mantissa,
            d,
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b, d) = self.align(other);
        HpDecimal {
            mantissa: a + b,
            digits: d,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b, d) = self.align(other);
        HpDecimal {
            mantissa: a * b / pow10(d),
            digits: d,
        }
    }

    /// Quotient; panics on division by zero.
    pub fn div(&self, other: &Self) -> Self {
        let (a, b, d) = self.align(other);
        assert!(!b.is_zero(), "division by zero");
        HpDecimal {
            mantissa: a * pow10(d) / b,
            digits: d,
        }
    }

    pub fn min(self, other: Self) -> Self {
        let (a, b, _) = self.align(&other);
        if a <= b {
            self
        } else {
            other
        }
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    pub fn to_f64(&self) -> f64 {
        let s = self.to_string();
        s.parse().unwrap_or(f64::NAN)
    }
}

impl fmt::Display for HpDecimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let neg = self.mantissa.is_negative();
        let digits = self.mantissa.magnitude().to_string();
        let d = self.digits as usize;
        let (int, frac) = if digits.len() > d {
            let (i, fr) = digits.split_at(digits.len() - d);
            (i.to_string(), fr.to_string())
        } else {
            ("0".to_string(), format!("{digits:0>d$}"))
        };
        if neg {
            write!(f, "-")?;
        }
        if d == 0 {
            write!(f, "{int}")
        } else {
            write!(f, "{int}.{frac}")
        }
    }
}

impl Serialize for HpDecimal {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}
