use std::collections::HashMap;

use rayon::prelude::*;

use super::intersect::{intersect_curves, IncidenceRecord};
use crate::algebraic::{AlgebraicReal, UPoly};
use crate::error::{Error, Result};
use crate::flows::{project_curve, Curve, ProjectionMap};
use crate::rational::Rational;

#[derive(Clone, Debug, Default)]
pub struct IncidenceOptions {
    /// Worker threads; `0` or `1` runs on the calling thread.
    pub workers: usize,
    /// A map constant along every curve of the first family. Candidate
    /// pairs are then found by locating projected points on projected curves.
    /// Families of one-point curves are filtered this way automatically.
    pub invariant: Option<ProjectionMap>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidenceSet {
    pub records: Vec<IncidenceRecord>,
    pub count: usize,
}

pub fn run_with_workers<T: Send>(workers: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    if workers <= 1 {
        return Ok(f());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;
    Ok(pool.install(f))
}

/// All incidences between curves of `l1` and curves of `l2`, sorted by ids.
pub fn incidence_set(l1: &[Curve], l2: &[Curve], opts: &IncidenceOptions) -> Result<IncidenceSet> {
    let by_id1: HashMap<u64, &Curve> = l1.iter().map(|c| (c.id, c)).collect();
    let by_id2: HashMap<u64, &Curve> = l2.iter().map(|c| (c.id, c)).collect();
    if by_id1.len() != l1.len() || by_id2.len() != l2.len() {
        return Err(Error::InvalidParameter("curve ids must be unique within each family".into()));
    }
    // a curve present in both families is the same id with the same parametrization;
    // such curves are not paired with themselves, and shared pairs are counted once
    let shared = |c: &Curve, other: &HashMap<u64, &Curve>| other.get(&c.id).is_some_and(|d| *d == c);
    let keep = |c1: &Curve, c2: &Curve| {
        c1 != c2 && !(c1.id > c2.id && shared(c1, &by_id2) && shared(c2, &by_id1))
    };
    let filter = Candidates::build(l1, opts.invariant.as_ref())?;
    let per_curve = run_with_workers(opts.workers, || {
        l2.par_iter()
            .map(|c2| -> Result<Vec<IncidenceRecord>> {
                let cands: Vec<usize> = match &filter {
                    Some(f) => f.lookup(c2)?,
                    None => (0..l1.len()).collect(),
                };
                let mut out = Vec::new();
                for i in cands {
                    let c1 = &l1[i];
                    if keep(c1, c2) {
                        out.extend(intersect_curves(c1, c2)?);
                    }
                }
                Ok(out)
            })
            .collect::<Vec<_>>()
    })?;
    let mut records = Vec::new();
    for r in per_curve {
        records.extend(r?);
    }
    records.sort_by(|a, b| (a.id1, a.id2).cmp(&(b.id1, b.id2)).then_with(|| a.point.cmp(&b.point)));
    let count = records.len();
    Ok(IncidenceSet { records, count })
}

/// Projected first-family points, bucketed by first coordinate.
struct Candidates {
    pi: Option<ProjectionMap>,
    buckets: HashMap<Rational, Vec<usize>>,
    points: HashMap<Vec<Rational>, Vec<usize>>,
}

impl Candidates {
    fn build(l1: &[Curve], pi: Option<&ProjectionMap>) -> Result<Option<Self>> {
        let mut keys = Vec::with_capacity(l1.len());
        for c in l1 {
            let p = match pi {
                Some(pi) => project_curve(c, pi)?,
                None => c.clone(),
            };
            if !p.is_singleton() || p.base_point.is_empty() {
                return Ok(None);
            }
            keys.push(p.base_point);
        }
        if l1.is_empty() {
            return Ok(None);
        }
        let mut buckets: HashMap<Rational, Vec<usize>> = HashMap::new();
        let mut points: HashMap<Vec<Rational>, Vec<usize>> = HashMap::new();
        for (i, k) in keys.into_iter().enumerate() {
            buckets.entry(k[0].clone()).or_default().push(i);
            points.entry(k).or_default().push(i);
        }
        Ok(Some(Candidates {
            pi: pi.cloned(),
            buckets,
            points,
        }))
    }

    fn lookup(&self, c2: &Curve) -> Result<Vec<usize>> {
        let g = match &self.pi {
            Some(pi) => project_curve(c2, pi)?,
            None => c2.clone(),
        };
        let mut out = Vec::new();
        if g.is_singleton() {
            if let Some(v) = self.points.get(&g.base_point) {
                out.extend(v);
            }
            return Ok(out);
        }
        let first = &g.param[0];
        if first.is_constant() {
            if let Some(v) = self.buckets.get(&first.coeff(0)) {
                out.extend(v);
            }
            return Ok(out);
        }
        for (value, members) in &self.buckets {
            let eq = first - &UPoly::constant(value.clone());
            let roots: Vec<AlgebraicReal> = if eq.degree() == Some(1) {
                vec![AlgebraicReal::Rational(-eq.coeff(0) / eq.coeff(1))]
            } else {
                AlgebraicReal::roots_of(&eq)
            };
            if roots.iter().any(|r| !r.is_rational()) {
                out.extend(members);
                continue;
            }
            for r in roots {
                let p = g.eval(r.as_rational().unwrap());
                if let Some(v) = self.points.get(&p) {
                    out.extend(v);
                }
            }
        }
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }
}
