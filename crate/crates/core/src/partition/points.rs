use serde::Serialize;

use crate::error::{Error, Result};
use crate::polyalg::Poly;
use crate::rational::Rational;

/// Points of `Q^dim` with positive integer weights.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightedPoints {
    pub dim: usize,
    #[serde(serialize_with = "ser_points")]
    pub points: Vec<Vec<Rational>>,
    pub weights: Vec<u64>,
}

fn ser_points<S: serde::Serializer>(p: &[Vec<Rational>], s: S) -> std::result::Result<S::Ok, S::Error> {
    let v: Vec<Vec<String>> = p.iter().map(|q| q.iter().map(|r| r.to_string()).collect()).collect();
    serde::Serialize::serialize(&v, s)
}

impl WeightedPoints {
    pub fn new(dim: usize, points: Vec<Vec<Rational>>, weights: Vec<u64>) -> Result<Self> {
        if points.len() != weights.len() {
            return Err(Error::DimensionMismatch {
                expected: points.len(),
                got: weights.len(),
            });
        }
        if let Some(p) = points.iter().find(|p| p.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: p.len(),
            });
        }
        if weights.contains(&0) {
            return Err(Error::InvalidParameter("weights must be positive".into()));
        }
        Ok(WeightedPoints { dim, points, weights })
    }

    pub fn unit(dim: usize, points: Vec<Vec<Rational>>) -> Result<Self> {
        let w = vec![1; points.len()];
        WeightedPoints::new(dim, points, w)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn total_weight(&self) -> u64 {
        self.weights.iter().sum()
    }

    pub fn subset(&self, idx: &[usize]) -> WeightedPoints {
        WeightedPoints {
            dim: self.dim,
            points: idx.iter().map(|&i| self.points[i].clone()).collect(),
            weights: idx.iter().map(|&i| self.weights[i]).collect(),
        }
    }
}

/// Exponent vectors of total degree at most `deg`, graded and then by descending lex.
pub fn monomials_upto(dim: usize, deg: u32) -> Vec<Vec<u32>> {
    fn rec(dim: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == dim - 1 {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for e in (0..=left).rev() {
            cur.push(e);
            rec(dim, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    for total in 0..=deg {
        if dim == 0 {
            if total == 0 {
                out.push(Vec::new());
            }
            continue;
        }
        rec(dim, total, &mut Vec::new(), &mut out);
    }
    out
}

pub fn eval_monomial(exps: &[u32], p: &[Rational]) -> Rational {
    exps.iter()
        .zip(p)
        .fold(Rational::from_integer(1.into()), |acc, (&e, x)| acc * num_traits::pow(x.clone(), e as usize))
}

pub fn poly_from_coeffs(dim: usize, monos: &[Vec<u32>], coeffs: &[Rational]) -> Poly {
    Poly::from_terms(dim, monos.iter().cloned().zip(coeffs.iter().cloned()))
}

/// `C(n, k)` saturating at `u64::MAX`.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// Least `d'` with `C(d' + dim, dim) > classes`.
pub fn cut_degree(dim: usize, classes: usize) -> u32 {
    let mut d = 0u32;
    while binomial(d as u64 + dim as u64, dim as u64) <= classes as u64 {
        d += 1;
    }
    d
}
