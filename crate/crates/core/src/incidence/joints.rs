use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_traits::One;

use super::intersect::AlgebraicPoint;
use super::sets::{incidence_set, IncidenceOptions};
use crate::error::{Error, Result};
use crate::flows::Curve;
use crate::hp::HpDecimal;
use crate::linalg::rank_of;
use crate::rational::Rational;

/// A point where curves with spanning generator coordinates meet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Joint {
    pub point: AlgebraicPoint,
    /// Number of `V_dim`-element sets of curves through the point whose coordinates span.
    pub multiplicity: u64,
    pub curves: Vec<u64>,
}

fn coords_of(c: &Curve, v_dim: usize) -> Result<&[Rational]> {
    match &c.generator_coords {
        Some(v) if v.len() == v_dim => Ok(v),
        Some(v) => Err(Error::DimensionMismatch {
            expected: v_dim,
            got: v.len(),
        }),
        None => Err(Error::MissingGeneratorCoords(c.id)),
    }
}

fn spanning_subsets(vs: &[&[Rational]], k: usize) -> u64 {
    fn rec(vs: &[&[Rational]], k: usize, start: usize, chosen: &mut Vec<Vec<Rational>>, count: &mut u64) {
        if chosen.len() == k {
            if rank_of(chosen) == k {
                *count += 1;
            }
            return;
        }
        for i in start..vs.len() {
            if vs.len() - i < k - chosen.len() {
                break;
            }
            chosen.push(vs[i].to_vec());
            rec(vs, k, i + 1, chosen, count);
            chosen.pop();
        }
    }
    let mut count = 0;
    rec(vs, k, 0, &mut Vec::new(), &mut count);
    count
}

/// Joints of a curve family whose generator coordinates live in `Q^v_dim`.
pub fn detect_joints(curves: &[Curve], v_dim: usize, workers: usize) -> Result<Vec<Joint>> {
    if v_dim < 2 {
        return Err(Error::InvalidParameter("joints need dim V >= 2".into()));
    }
    let by_id: HashMap<u64, &[Rational]> = curves
        .iter()
        .map(|c| coords_of(c, v_dim).map(|v| (c.id, v)))
        .collect::<Result<_>>()?;
    let opts = IncidenceOptions {
        workers,
        invariant: None,
    };
    let inc = incidence_set(curves, curves, &opts)?;
    let mut through: BTreeMap<AlgebraicPoint, BTreeSet<u64>> = BTreeMap::new();
    for r in inc.records {
        let e = through.entry(r.point).or_default();
        e.insert(r.id1);
        e.insert(r.id2);
    }
    let mut out = Vec::new();
    for (point, ids) in through {
        let vs: Vec<&[Rational]> = ids.iter().map(|id| by_id[id]).collect();
        if rank_of(&vs.iter().map(|v| v.to_vec()).collect::<Vec<_>>()) < v_dim {
            continue;
        }
        out.push(Joint {
            point,
            multiplicity: spanning_subsets(&vs, v_dim),
            curves: ids.into_iter().collect(),
        });
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct MultijointSum {
    /// Joints with their ordered-tuple multiplicity.
    pub joints: Vec<(AlgebraicPoint, u64)>,
    /// `sum_p m(p)^(1/(n-1))`.
    pub sum: HpDecimal,
}

/// Weighted multijoint count over `n` families, meeting across families only.
pub fn multijoint_sum(families: &[Vec<Curve>], n: usize, digits: u32, workers: usize) -> Result<MultijointSum> {
    if n < 2 || families.len() != n {
        return Err(Error::InvalidParameter(format!(
            "multijoint sum needs n >= 2 families, got n = {n} with {} families",
            families.len()
        )));
    }
    let v_dim = families
        .iter()
        .flatten()
        .next()
        .and_then(|c| c.generator_coords.as_ref().map(Vec::len))
        .unwrap_or(n);
    let index: Vec<HashMap<u64, usize>> = families
        .iter()
        .map(|f| f.iter().enumerate().map(|(i, c)| (c.id, i)).collect())
        .collect();
    for c in families.iter().flatten() {
        coords_of(c, v_dim)?;
    }
    let opts = IncidenceOptions {
        workers,
        invariant: None,
    };
    let mut through: BTreeMap<AlgebraicPoint, Vec<BTreeSet<usize>>> = BTreeMap::new();
    for f in 0..n {
        for g in f + 1..n {
            let inc = incidence_set_across(&families[f], &families[g], &opts)?;
            for r in inc {
                let e = through.entry(r.0).or_insert_with(|| vec![BTreeSet::new(); n]);
                e[f].insert(index[f][&r.1]);
                e[g].insert(index[g][&r.2]);
            }
        }
    }
    let mut joints = Vec::new();
    let mut sum = HpDecimal::from_integer(0, digits);
    for (point, members) in through {
        if members.iter().any(BTreeSet::is_empty) {
            continue;
        }
        let lists: Vec<Vec<&[Rational]>> = members
            .iter()
            .zip(families)
            .map(|(m, fam)| m.iter().map(|&i| fam[i].generator_coords.as_deref().unwrap()).collect())
            .collect();
        let m = ordered_spanning_tuples(&lists, v_dim);
        if m > 0 {
            sum = sum.add(&HpDecimal::pow_ratio(&Rational::from_integer(m.into()), 1, (n - 1) as u32, digits));
            joints.push((point, m));
        }
    }
    Ok(MultijointSum { joints, sum })
}

/// Incidences between two families as `(point, id1, id2)`, ids possibly shared across families.
fn incidence_set_across(
    a: &[Curve],
    b: &[Curve],
    opts: &IncidenceOptions,
) -> Result<Vec<(AlgebraicPoint, u64, u64)>> {
    // ids are only unique within a family, so shift the second family out of the way
    let shift = a.iter().map(|c| c.id).max().map_or(0, |m| m + 1);
    let b2: Vec<Curve> = b
        .iter()
        .map(|c| {
            let mut c = c.clone();
            c.id += shift;
            c
        })
        .collect();
    let inc = incidence_set(a, &b2, opts)?;
    Ok(inc.records.into_iter().map(|r| (r.point, r.id1, r.id2 - shift)).collect())
}

fn ordered_spanning_tuples(lists: &[Vec<&[Rational]>], v_dim: usize) -> u64 {
    fn rec(lists: &[Vec<&[Rational]>], v_dim: usize, chosen: &mut Vec<Vec<Rational>>, count: &mut u64) {
        let k = chosen.len();
        if k == lists.len() {
            if rank_of(chosen) == v_dim {
                *count += 1;
            }
            return;
        }
        for v in &lists[k] {
            chosen.push(v.to_vec());
            rec(lists, v_dim, chosen, count);
            chosen.pop();
        }
    }
    let mut count = 0;
    rec(lists, v_dim, &mut Vec::new(), &mut count);
    count
}

/// `prod_j (#L_j)^(1/(n-1))`, the Loomis-Whitney right-hand side.
pub fn loomis_whitney_rhs(sizes: &[u64], digits: u32) -> HpDecimal {
    let n = sizes.len().max(2);
    let prod = sizes.iter().fold(Rational::one(), |acc, &s| acc * Rational::from_integer(s.into()));
    HpDecimal::pow_ratio(&prod, 1, (n - 1) as u32, digits)
}
