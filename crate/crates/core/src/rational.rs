//! Helpers around arbitrary-precision rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_vec(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| rat(x)).collect()
}

/// Parses `p`, `-p` or `p/q` with integer `p`, nonzero `q`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse {
        line: 0,
        msg: format!("not a rational: {s:?}"),
    };
    if s.is_empty() {
        return Err(bad());
    }
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

pub fn to_f64(r: &Rational) -> f64 {
    match (r.numer().to_f64(), r.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            // scale down both parts until they fit
            let shift = r.numer().bits().max(r.denom().bits()).saturating_sub(1000);
            let n = (r.numer() >> shift).to_f64().unwrap_or(0.0);
            let d = (r.denom() >> shift).to_f64().unwrap_or(1.0);
            if d == 0.0 {
                if n.is_sign_negative() {
                    f64::NEG_INFINITY
                } else {
                    f64::INFINITY
                }
            } else {
                n / d
            }
        }
    }
}

/// Best rational approximation with denominator at most `max_den`.
pub fn from_f64_approx(x: f64, max_den: i64) -> Rational {
    if !x.is_finite() {
        return Rational::zero();
    }
    // continued fraction convergents
    let (mut p0, mut q0, mut p1, mut q1) = (0i128, 1i128, 1i128, 0i128);
    let mut v = x.abs();
    for _ in 0..64 {
        let a = v.floor();
        if a > 1e18 {
            break;
        }
        let a = a as i128;
        let p2 = a * p1 + p0;
        let q2 = a * q1 + q0;
        if q2 > max_den as i128 {
            break;
        }
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        let f = v - v.floor();
        if f < 1e-15 {
            break;
        }
        v = 1.0 / f;
    }
    if q1 == 0 {
        return Rational::zero();
    }
    let r = Rational::new(BigInt::from(p1), BigInt::from(q1));
    if x < 0.0 {
        -r
    } else {
        r
    }
}

pub fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}

/// Integer square root test: returns `Some(root)` when `n` is a perfect square.
pub fn exact_sqrt_u128(n: u128) -> Option<u128> {
    let r = isqrt_u128(n);
    (r * r == n).then_some(r)
}

pub fn isqrt_u128(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as u128;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

pub fn abs(r: &Rational) -> Rational {
    r.abs()
}
