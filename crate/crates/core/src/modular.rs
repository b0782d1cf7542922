//! Linear algebra over prime fields `Z/p`, `p < 2^62`, with Chinese
//! remaindering and rational reconstruction back to `Q`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::rational::Rational;

fn mul(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul(r, a, p);
        }
        a = mul(a, a, p);
        e >>= 1;
    }
    r
}

pub fn inv(a: u64, p: u64) -> u64 {
    pow(a, p - 2, p)
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
        let mut x = pow(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primes below `2^62` in decreasing order.
pub fn primes() -> impl Iterator<Item = u64> {
    let mut next = (1u64 << 62) - 1;
    std::iter::from_fn(move || {
        while !is_prime(next) {
            next -= 2;
        }
        let p = next;
        next -= 2;
        Some(p)
    })
}

/// `r mod p`, or `None` when `p` divides the denominator.
pub fn reduce(r: &Rational, p: u64) -> Option<u64> {
    let pb = BigInt::from(p);
    let d = r.denom().mod_floor(&pb).to_u64().unwrap();
    if d == 0 {
        return None;
    }
    let n = r.numer().mod_floor(&pb).to_u64().unwrap();
    Some(mul(n, inv(d, p), p))
}

/// Dense matrix over `Z/p`.
#[derive(Clone, Debug)]
pub struct ModMatrix {
    p: u64,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl ModMatrix {
    pub fn new(p: u64, rows: usize, cols: usize, data: Vec<u64>) -> Self {
        assert_eq!(data.len(), rows * cols, "ragged matrix");
        ModMatrix { p, rows, cols, data }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    /// Reduced row echelon form in place; returns pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let (p, cols) = (self.p, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == self.rows {
                break;
            }
            let Some(piv) = (r..self.rows).find(|&i| self.data[i * cols + c] != 0) else {
                continue;
            };
            if piv != r {
                for k in 0..cols {
                    self.data.swap(piv * cols + k, r * cols + k);
                }
            }
            let iv = inv(self.data[r * cols + c], p);
            for k in c..cols {
                self.data[r * cols + k] = mul(self.data[r * cols + k], iv, p);
            }
            let pivot_row: Vec<u64> = self.data[r * cols..(r + 1) * cols].to_vec();
            for i in 0..self.rows {
                let f = self.data[i * cols + c];
                if i == r || f == 0 {
                    continue;
                }
                let neg = p - f;
                let row = &mut self.data[i * cols..(i + 1) * cols];
                for (cell, &pk) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                    if pk != 0 {
                        *cell = ((*cell as u128 + neg as u128 * pk as u128) % p as u128) as u64;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }
}

/// Incremental Chinese remaindering of a vector of residues into the symmetric range.
#[derive(Clone, Debug)]
pub struct Crt {
    pub modulus: BigInt,
    pub values: Vec<BigInt>,
}

impl Crt {
    pub fn new(len: usize) -> Self {
        Crt {
            modulus: BigInt::one(),
            values: vec![BigInt::zero(); len],
        }
    }

    pub fn add(&mut self, p: u64, residues: &[u64]) {
        let pb = BigInt::from(p);
        let m_mod_p = self.modulus.mod_floor(&pb).to_u64().unwrap();
        let m_inv = inv(m_mod_p, p);
        for (x, &r) in self.values.iter_mut().zip(residues) {
            let cur = x.mod_floor(&pb).to_u64().unwrap();
            let diff = (r + p - cur) % p;
            let k = mul(diff, m_inv, p);
            *x += &self.modulus * BigInt::from(k);
        }
        self.modulus *= pb;
    }

    /// Each value as `n/d` with `|n|, d <= sqrt(M/2)`, if all reconstruct.
    pub fn rationals(&self) -> Option<Vec<Rational>> {
        self.values.iter().map(|v| rational_reconstruct(v, &self.modulus)).collect()
    }
}

/// The fraction `n/d` congruent to `u` modulo `m` with `|n|, d <= sqrt(m/2)`.
pub fn rational_reconstruct(u: &BigInt, m: &BigInt) -> Option<Rational> {
    let bound = (m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), u.mod_floor(m));
    let (mut s0, mut s1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let s2 = &s0 - &q * &s1;
        (r0, r1) = (r1, r2);
        (s0, s1) = (s1, s2);
    }
    if s1.is_zero() || s1.abs() > bound || !r1.gcd(&s1).is_one() {
        return None;
    }
    Some(Rational::new(r1, s1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    #[test]
    fn prime_stream() {
        let ps: Vec<u64> = primes().take(3).collect();
        assert!(ps.iter().all(|&p| p < 1 << 62 && is_prime(p)));
        assert!(ps.windows(2).all(|w| w[0] > w[1]));
        assert!(!is_prime(3_215_031_751));
        assert!(is_prime(1_000_000_007));
    }

    #[test]
    fn crt_reconstructs_fractions() {
        let want = vec![frac(-22, 7), frac(355, 113), frac(0, 1), frac(1, 1_000_003)];
        let mut crt = Crt::new(want.len());
        for p in primes().take(2) {
            let rs: Vec<u64> = want.iter().map(|r| reduce(r, p).unwrap()).collect();
            crt.add(p, &rs);
        }
        assert_eq!(crt.rationals().unwrap(), want);
    }

    #[test]
    fn rank_mod_p() {
        let p = 1_000_000_007;
        let m = ModMatrix::new(p, 3, 3, vec![1, 2, 3, 2, 4, 6, 1, 0, 1]);
        assert_eq!(m.rank(), 2);
        assert_eq!(reduce(&frac(1, 2), p), Some(500_000_004));
        assert_eq!(reduce(&frac(1, p as i64), p), None);
    }
}
