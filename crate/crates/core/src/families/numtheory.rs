use crate::error::{Error, Result};
use crate::rational::exact_sqrt_u128;

/// The least `s` with `c / s` a perfect square.
pub fn squarefree_part(c: u64) -> Result<u64> {
    if c == 0 {
        return Err(Error::InvalidParameter("square-free part of 0".into()));
    }
    let mut rest = c;
    let mut out = 1u64;
    let mut p = 2u64;
    while p * p <= rest {
        let mut e = 0;
        while rest.is_multiple_of(p) {
            rest /= p;
            e += 1;
        }
        if e % 2 == 1 {
            out *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    Ok(out * rest)
}

type Triple = (u64, u64, u64);

/// Solutions of `4ac = b^2` in `[0, n^3] x [0, n^2] x [0, n]`, sorted.
pub fn count_square_triples(n: u64) -> Result<(u64, Vec<Triple>)> {
    if n == 0 {
        return Err(Error::InvalidParameter("N must be at least 1".into()));
    }
    let (amax, bmax) = (n.pow(3), n.pow(2));
    let mut out = Vec::new();
    for a in 0..=amax {
        for c in 0..=n {
            if let Some(b) = exact_sqrt_u128(4 * a as u128 * c as u128) {
                if b <= bmax as u128 {
                    out.push((a, b as u64, c));
                }
            }
        }
    }
    out.sort_unstable();
    Ok((out.len() as u64, out))
}
