use num_traits::Zero;

use super::points::{eval_monomial, monomials_upto, poly_from_coeffs, WeightedPoints};
use crate::linalg::Matrix;
use crate::modular::{primes, reduce, Crt, ModMatrix};
use crate::polyalg::Poly;
use crate::rational::Rational;

/// Lowest-degree nonzero polynomial vanishing on a point set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VanishingPoly {
    pub poly: Poly,
    pub degree: u32,
    /// Monomial count and evaluation-matrix rank one degree lower; equal
    /// values certify that no polynomial of lower degree vanishes.
    pub certificate: Option<(usize, usize)>,
}

fn evaluation_matrix(p: &WeightedPoints, monos: &[Vec<u32>]) -> Matrix {
    let rows = p
        .points
        .iter()
        .map(|q| monos.iter().map(|m| eval_monomial(m, q)).collect())
        .collect();
    Matrix::from_rows(rows, monos.len())
}

/// The evaluation matrix mod `prime`, or `None` if a coordinate is not defined there.
fn evaluation_mod(p: &WeightedPoints, monos: &[Vec<u32>], prime: u64) -> Option<ModMatrix> {
    let mut data = Vec::with_capacity(p.len() * monos.len());
    for q in &p.points {
        let coords = q.iter().map(|x| reduce(x, prime)).collect::<Option<Vec<u64>>>()?;
        for m in monos {
            let v = m.iter().zip(&coords).fold(1u64, |acc, (&e, &x)| {
                (0..e).fold(acc, |a, _| ((a as u128 * x as u128) % prime as u128) as u64)
            });
            data.push(v);
        }
    }
    Some(ModMatrix::new(prime, p.len(), monos.len(), data))
}

/// Rank mod the first prime at which every coordinate is defined; a lower
/// bound for the rank over `Q`, and equal to it for all but finitely many primes.
fn rank_mod(p: &WeightedPoints, monos: &[Vec<u32>]) -> usize {
    primes()
        .find_map(|prime| evaluation_mod(p, monos, prime))
        .map(|m| m.rank())
        .expect("some prime avoids every denominator")
}

fn has_kernel(p: &WeightedPoints, d: u32) -> bool {
    let monos = monomials_upto(p.dim, d);
    monos.len() > p.len() || rank_mod(p, &monos) < monos.len()
}

fn nonzero_count(v: &[Rational]) -> usize {
    v.iter().filter(|c| !c.is_zero()).count()
}

fn vanishes(p: &WeightedPoints, monos: &[Vec<u32>], v: &[Rational]) -> bool {
    p.points
        .iter()
        .all(|q| monos.iter().zip(v).filter(|(_, c)| !c.is_zero()).map(|(m, c)| c * eval_monomial(m, q)).sum::<Rational>().is_zero())
}

/// Sparsest nullspace basis vector of the exact reduced echelon form.
fn kernel_exact(p: &WeightedPoints, monos: &[Vec<u32>]) -> Option<Vec<Rational>> {
    evaluation_matrix(p, monos).nullspace().into_iter().min_by_key(|v| nonzero_count(v))
}

/// Prime count after which reconstruction must have succeeded for a true kernel.
fn prime_budget(p: &WeightedPoints, deg: u32, rank: usize) -> usize {
    let bits = |x: &Rational| x.numer().bits().max(x.denom().bits());
    let coord_bits = p.points.iter().flatten().map(bits).max().unwrap_or(1);
    let entry_bits = deg as u64 * p.dim as u64 * 2 * coord_bits;
    let r = rank.max(1) as u64;
    let minor_bits = r * (entry_bits + 64 - r.leading_zeros() as u64 + 1);
    (2 * minor_bits + 64) as usize / 61 + 2
}

/// The same vector as [`kernel_exact`], found by reducing mod many primes.
fn kernel_modular(p: &WeightedPoints, monos: &[Vec<u32>], deg: u32) -> Option<Vec<Rational>> {
    let mut stream = primes().filter_map(|prime| evaluation_mod(p, monos, prime));
    let mut first = stream.next()?;
    let pivots = first.rref();
    let free_cols: Vec<usize> = (0..monos.len()).filter(|c| !pivots.contains(c)).collect();
    let free = *free_cols
        .iter()
        .min_by_key(|&&f| 1 + (0..pivots.len()).filter(|&r| first.get(r, f) != 0).count())?;
    let residues = |m: &ModMatrix, prime: u64| -> Vec<u64> {
        (0..pivots.len()).map(|r| (prime - m.get(r, free)) % prime).collect()
    };
    let mut crt = Crt::new(pivots.len());
    crt.add(first.modulus(), &residues(&first, first.modulus()));
    let budget = prime_budget(p, deg, pivots.len());
    let mut used = 1;
    let mut step = 1;
    while used <= budget {
        if used % step == 0 {
            if let Some(vals) = crt.rationals() {
                let mut v = vec![Rational::zero(); monos.len()];
                v[free] = Rational::from_integer(1.into());
                for (&c, x) in pivots.iter().zip(vals) {
                    v[c] = x;
                }
                if vanishes(p, monos, &v) {
                    return Some(v);
                }
            }
            step = (step * 2).min(16);
        }
        let mut m = stream.next()?;
        if m.rref() != pivots {
            continue;
        }
        let prime = m.modulus();
        crt.add(prime, &residues(&m, prime));
        used += 1;
    }
    None
}

/// Searches degrees `0..=max_degree` for a polynomial vanishing on every point.
pub fn vanishing_poly(p: &WeightedPoints, max_degree: u32) -> Option<VanishingPoly> {
    let exact_kernel = |d: u32| {
        let monos = monomials_upto(p.dim, d);
        monos.len() > p.len() || evaluation_matrix(p, &monos).rank() < monos.len()
    };
    // full rank mod a prime is full rank over Q, so a negative answer is exact
    if !has_kernel(p, max_degree) {
        return None;
    }
    // kernels grow with the degree, so bisect for the first nonempty one
    let (mut lo, mut hi) = (0u32, max_degree);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if has_kernel(p, mid) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    let monos = monomials_upto(p.dim, lo);
    let (degree, monos, v) = match kernel_modular(p, &monos, lo) {
        Some(v) => (lo, monos, v),
        None => {
            // an unlucky prime; redo the search exactly
            let d = (0..=max_degree).find(|&d| exact_kernel(d))?;
            let monos = monomials_upto(p.dim, d);
            let v = kernel_exact(p, &monos)?;
            (d, monos, v)
        }
    };
    let certificate = (degree > 0).then(|| {
        let lower = monomials_upto(p.dim, degree - 1);
        let r = rank_mod(p, &lower);
        let r = if r == lower.len() { r } else { evaluation_matrix(p, &lower).rank() };
        (lower.len(), r)
    });
    Some(VanishingPoly {
        poly: poly_from_coeffs(p.dim, &monos, &v),
        degree,
        certificate,
    })
}
