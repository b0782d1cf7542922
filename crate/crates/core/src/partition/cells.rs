use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::cut::{ham_sandwich_cut, CutOptions};
use super::points::WeightedPoints;
use crate::algebraic::{simplest_between, AlgebraicReal, UPoly};
use crate::error::{Error, Result};
use crate::flows::Curve;
use crate::polyalg::Poly;
use crate::rational::Rational;

/// One open cell: the points whose sign pattern under the cuts is `signs`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cell {
    pub indices: Vec<usize>,
    pub weight: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartitionResult {
    pub dim: usize,
    #[serde(serialize_with = "ser_polys")]
    pub cuts: Vec<Poly>,
    /// Keyed by sign strings over `+`/`-`, one character per cut.
    pub classes: BTreeMap<String, Cell>,
    /// Points on the zero set of some cut.
    pub wall: Vec<usize>,
    pub wall_weight: u64,
}

fn ser_polys<S: serde::Serializer>(p: &[Poly], s: S) -> std::result::Result<S::Ok, S::Error> {
    let v: Vec<String> = p.iter().map(|q| q.to_string()).collect();
    serde::Serialize::serialize(&v, s)
}

impl PartitionResult {
    /// Sum of the cut degrees.
    pub fn degree(&self) -> u32 {
        self.cuts.iter().map(|c| c.degree().unwrap_or(0)).sum()
    }

    pub fn max_class_weight(&self) -> u64 {
        self.classes.values().map(|c| c.weight).max().unwrap_or(0)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("partition result serializes")
    }
}

/// Iterated polynomial ham-sandwich partition.
///
/// Round `i` bisects every class heavier than `total / 2^i` with one cut
/// and refines all classes by its sign.
pub fn partition_points(p: &WeightedPoints, rounds: u32, opts: &CutOptions) -> Result<PartitionResult> {
    if rounds > 62 {
        return Err(Error::InvalidParameter(format!("rounds must be at most 62, got {rounds}")));
    }
    let total = p.total_weight() as u128;
    let mut classes: Vec<(String, Vec<usize>)> = vec![(String::new(), (0..p.len()).collect())];
    let mut wall = Vec::new();
    let mut cuts = Vec::new();
    for i in 1..=rounds {
        let heavy: Vec<WeightedPoints> = classes
            .iter()
            .map(|(_, idx)| p.subset(idx))
            .filter(|c| (c.total_weight() as u128) << i > total)
            .collect();
        let cut = if heavy.is_empty() {
            Poly::one(p.dim)
        } else {
            let o = CutOptions {
                seed: opts.seed.wrapping_add(i as u64),
                ..opts.clone()
            };
            ham_sandwich_cut(&heavy, &o)?
        };
        let mut next = Vec::new();
        for (signs, idx) in classes {
            let (mut pos, mut neg) = (Vec::new(), Vec::new());
            for k in idx {
                let v = cut.eval(&p.points[k])?;
                if v.is_zero() {
                    wall.push(k);
                } else if v.is_positive() {
                    pos.push(k);
                } else {
                    neg.push(k);
                }
            }
            for (ch, part) in [('+', pos), ('-', neg)] {
                if !part.is_empty() {
                    next.push((format!("{signs}{ch}"), part));
                }
            }
        }
        classes = next;
        cuts.push(cut);
    }
    wall.sort_unstable();
    let wall_weight = wall.iter().map(|&k| p.weights[k]).sum();
    let classes = classes
        .into_iter()
        .map(|(s, indices)| {
            let weight = indices.iter().map(|&k| p.weights[k]).sum();
            (s, Cell { indices, weight })
        })
        .collect();
    Ok(PartitionResult {
        dim: p.dim,
        cuts,
        classes,
        wall,
        wall_weight,
    })
}

/// How a curve meets the cells of a partition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CrossingReport {
    /// The curve lies in the zero set of cut `cut` (0-based).
    WallCurve { cut: usize },
    Crossings {
        /// Distinct open cells the curve passes through.
        classes: usize,
        /// Open parameter intervals between consecutive wall crossings.
        segments: usize,
        /// `1 + sum of deg(cut o curve)`.
        bound: u32,
    },
}

fn compose_curve(cut: &Poly, c: &Curve) -> Result<UPoly> {
    let subs: Vec<Poly> = c.param.iter().map(UPoly::to_poly).collect();
    Ok(UPoly::from_poly(&cut.compose(&subs)?))
}

/// A rational strictly between two distinct algebraic reals `a < b`.
fn rational_between(a: &AlgebraicReal, b: &AlgebraicReal) -> Rational {
    let (mut a, mut b) = (a.clone(), b.clone());
    loop {
        let (_, ahi) = a.bounds();
        let (blo, _) = b.bounds();
        if ahi < blo {
            // open intervals: ahi may equal a only when a is rational
            let lo = if a.is_rational() { ahi } else { a.bounds().0.max(ahi.clone()) };
            return simplest_between(&lo, &blo);
        }
        a.refine();
        b.refine();
    }
}

pub fn curve_class_crossings(curve: &Curve, cuts: &[Poly]) -> Result<CrossingReport> {
    let mut composed = Vec::with_capacity(cuts.len());
    for (k, cut) in cuts.iter().enumerate() {
        if cut.nvars() != curve.ambient_dim() {
            return Err(Error::DimensionMismatch {
                expected: curve.ambient_dim(),
                got: cut.nvars(),
            });
        }
        let u = compose_curve(cut, curve)?;
        if u.is_zero() {
            return Ok(CrossingReport::WallCurve { cut: k });
        }
        composed.push(u);
    }
    let bound = 1 + composed.iter().map(|u| u.degree().unwrap_or(0) as u32).sum::<u32>();
    let mut roots: Vec<AlgebraicReal> = composed.iter().flat_map(AlgebraicReal::roots_of).collect();
    roots.sort();
    roots.dedup();
    let mut samples = Vec::with_capacity(roots.len() + 1);
    match (roots.first(), roots.last()) {
        (Some(first), Some(last)) => {
            samples.push(first.bounds().0.floor() - Rational::one());
            for w in roots.windows(2) {
                samples.push(rational_between(&w[0], &w[1]));
            }
            samples.push(last.bounds().1.ceil() + Rational::one());
        }
        _ => samples.push(Rational::zero()),
    }
    let classes: BTreeSet<String> = samples
        .iter()
        .map(|s| {
            composed
                .iter()
                .map(|u| if u.eval(s).is_positive() { '+' } else { '-' })
                .collect()
        })
        .collect();
    Ok(CrossingReport::Crossings {
        classes: classes.len(),
        segments: roots.len() + 1,
        bound,
    })
}

/// Least `j` with `2^j >= D^2`, where
/// `D = max(l1^((n-1)/(2n-3)) * l2^(-(n-2)/(2n-3)), 1)` for dimension `n >= 2`.
pub fn optimal_rounds(l1: u64, l2: u64, n: u32) -> Result<u32> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("dimension must be at least 2, got {n}")));
    }
    if l1 == 0 || l2 == 0 {
        return Ok(0);
    }
    // 2^(j(2n-3)) * l2^(2(n-2)) >= l1^(2(n-1))
    let lhs_fixed = num_traits::pow(BigUint::from(l2), 2 * (n as usize - 2));
    let rhs = num_traits::pow(BigUint::from(l1), 2 * (n as usize - 1));
    let step = 2 * n - 3;
    let mut j = 0u32;
    while (&lhs_fixed << (j * step) as usize) < rhs {
        j += 1;
    }
    Ok(j)
}
