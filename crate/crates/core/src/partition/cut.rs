use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::points::{binomial, cut_degree, eval_monomial, monomials_upto, poly_from_coeffs, WeightedPoints};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::polyalg::Poly;
use crate::rational::{from_f64_approx, to_f64, Rational};

#[derive(Clone, Debug)]
pub struct CutOptions {
    pub seed: u64,
    /// Largest number of point subsets searched exhaustively.
    pub exhaustive_limit: u64,
    pub restarts: usize,
    pub iterations: usize,
}

impl Default for CutOptions {
    fn default() -> Self {
        CutOptions {
            seed: 0,
            exhaustive_limit: 4000,
            restarts: 400,
            iterations: 60,
        }
    }
}

/// Whether `sign(f)` leaves at most half of every class on each open side.
pub fn bisects(f: &Poly, classes: &[WeightedPoints]) -> Result<bool> {
    for c in classes {
        let (mut pos, mut neg, mut zero) = (0u64, 0u64, 0u64);
        for (p, &w) in c.points.iter().zip(&c.weights) {
            let v = f.eval(p)?;
            if v.is_zero() {
                zero += w;
            } else if v.is_positive() {
                pos += w;
            } else {
                neg += w;
            }
        }
        if pos.abs_diff(neg) > zero {
            return Ok(false);
        }
    }
    Ok(true)
}

struct Lifted {
    /// Distinct normalized points with their exact and float monomial values.
    exact: Vec<Vec<Rational>>,
    float: Vec<Vec<f64>>,
    /// Per class: (distinct point index, weight).
    classes: Vec<Vec<(usize, u64)>>,
}

impl Lifted {
    fn valid_exact(&self, a: &[Rational]) -> bool {
        let vals: Vec<Rational> = self
            .exact
            .iter()
            .map(|row| row.iter().zip(a).map(|(x, y)| x * y).sum())
            .collect();
        self.classes.iter().all(|cls| {
            let (mut pos, mut neg, mut zero) = (0u64, 0u64, 0u64);
            for &(i, w) in cls {
                let v = &vals[i];
                if v.is_zero() {
                    zero += w;
                } else if v.is_positive() {
                    pos += w;
                } else {
                    neg += w;
                }
            }
            pos.abs_diff(neg) <= zero
        })
    }
}

/// Polynomial of degree `d'` bisecting every class, `d'` least with `C(d' + dim, dim) > #classes`.
pub fn ham_sandwich_cut(classes: &[WeightedPoints], opts: &CutOptions) -> Result<Poly> {
    let dim = classes.first().map(|c| c.dim).unwrap_or(0);
    if let Some(c) = classes.iter().find(|c| c.dim != dim) {
        return Err(Error::DimensionMismatch { expected: dim, got: c.dim });
    }
    if classes.iter().all(WeightedPoints::is_empty) {
        return Ok(Poly::one(dim));
    }
    let monos = monomials_upto(dim, cut_degree(dim, classes.len()));
    let n = monos.len();

    // normalize to the box [-1, 1]^dim for the float search
    let mut lo = vec![None::<Rational>; dim];
    let mut hi = vec![None::<Rational>; dim];
    for p in classes.iter().flat_map(|c| &c.points) {
        for i in 0..dim {
            if lo[i].as_ref().is_none_or(|l| &p[i] < l) {
                lo[i] = Some(p[i].clone());
            }
            if hi[i].as_ref().is_none_or(|h| &p[i] > h) {
                hi[i] = Some(p[i].clone());
            }
        }
    }
    let two = Rational::from_integer(2.into());
    let center: Vec<Rational> = (0..dim).map(|i| (lo[i].clone().unwrap() + hi[i].clone().unwrap()) / &two).collect();
    let mut scale = (0..dim)
        .map(|i| (hi[i].clone().unwrap() - lo[i].clone().unwrap()) / &two)
        .max()
        .unwrap_or_else(Rational::zero);
    if scale.is_zero() {
        scale = Rational::from_integer(1.into());
    }
    let normalize = |p: &[Rational]| -> Vec<Rational> { p.iter().zip(&center).map(|(x, c)| (x - c) / &scale).collect() };

    let mut index: BTreeMap<Vec<Rational>, usize> = BTreeMap::new();
    let mut exact = Vec::new();
    let mut lifted_classes = Vec::new();
    for c in classes {
        let mut agg: BTreeMap<usize, u64> = BTreeMap::new();
        for (p, &w) in c.points.iter().zip(&c.weights) {
            let q = normalize(p);
            let next = index.len();
            let i = *index.entry(q.clone()).or_insert_with(|| {
                exact.push(monos.iter().map(|m| eval_monomial(m, &q)).collect::<Vec<_>>());
                next
            });
            *agg.entry(i).or_default() += w;
        }
        lifted_classes.push(agg.into_iter().collect::<Vec<_>>());
    }
    let float = exact.iter().map(|r| r.iter().map(to_f64).collect()).collect();
    let lifted = Lifted {
        exact,
        float,
        classes: lifted_classes,
    };

    let finish = |a: Vec<Rational>| -> Result<Poly> {
        let normalized = poly_from_coeffs(dim, &monos, &a);
        let subs: Vec<Poly> = (0..dim)
            .map(|i| {
                (&Poly::var(dim, i) - &Poly::constant(dim, center[i].clone())).scale(&scale.recip())
            })
            .collect();
        Ok(normalized.compose(&subs)?.primitive())
    };

    let all = Matrix::from_rows(lifted.exact.clone(), n);
    if all.rank() < n {
        // every point fits on one zero set
        let a = all.nullspace().into_iter().next().expect("rank deficiency gives a kernel vector");
        return finish(a);
    }

    let g = lifted.exact.len() as u64;
    if binomial(g, n as u64 - 1) <= opts.exhaustive_limit {
        if let Some(a) = exhaustive(&lifted, n) {
            return finish(a);
        }
    }
    if let Some(a) = pin_medians(&lifted, n, opts) {
        return finish(a);
    }
    Err(Error::SearchExhausted(format!(
        "no bisecting cut of degree {} found for {} classes after {} restarts",
        monos.last().map_or(0, |m| m.iter().sum::<u32>()),
        classes.len(),
        opts.restarts
    )))
}

/// Hyperplanes through `n - 1` lifted points, in lexicographic order of the subsets.
fn exhaustive(l: &Lifted, n: usize) -> Option<Vec<Rational>> {
    let g = l.exact.len();
    let k = n - 1;
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        let rows = idx.iter().map(|&i| l.exact[i].clone()).collect();
        let null = Matrix::from_rows(rows, n).nullspace();
        if null.len() == 1 && l.valid_exact(&null[0]) {
            return null.into_iter().next();
        }
        // next combination
        let mut j = k;
        loop {
            if j == 0 {
                return None;
            }
            j -= 1;
            if idx[j] < g - k + j {
                idx[j] += 1;
                for t in j + 1..k {
                    idx[t] = idx[t - 1] + 1;
                }
                break;
            }
        }
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn normalize_f(a: &mut [f64]) -> bool {
    let n = dot(a, a).sqrt();
    if n < 1e-300 || !n.is_finite() {
        return false;
    }
    a.iter_mut().for_each(|x| *x /= n);
    true
}

/// Weighted median points of each class: (lower, upper) distinct-point indices.
fn medians(l: &Lifted, vals: &[f64]) -> Vec<(usize, usize)> {
    l.classes
        .iter()
        .map(|cls| {
            let mut order: Vec<(usize, u64)> = cls.clone();
            order.sort_by(|x, y| vals[x.0].total_cmp(&vals[y.0]));
            let total: u64 = order.iter().map(|x| x.1).sum();
            let (mut cum, mut lower, mut upper) = (0u64, None, None);
            for &(i, w) in &order {
                cum += w;
                if lower.is_none() && 2 * cum >= total {
                    lower = Some(i);
                }
                if upper.is_none() && 2 * cum > total {
                    upper = Some(i);
                }
            }
            (lower.unwrap(), upper.unwrap())
        })
        .collect()
}

/// Repeatedly projects the coefficient vector so that one weighted median
/// point of every class lies on the zero set, until the cut bisects exactly.
fn pin_medians(l: &Lifted, n: usize, opts: &CutOptions) -> Option<Vec<Rational>> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for _ in 0..opts.restarts {
        let mut a: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        if !normalize_f(&mut a) {
            continue;
        }
        let mut last_pins: Vec<usize> = Vec::new();
        for _ in 0..opts.iterations {
            let vals: Vec<f64> = l.float.iter().map(|r| dot(r, &a)).collect();
            let mut pins: Vec<usize> = medians(l, &vals)
                .into_iter()
                .map(|(lo, hi)| if vals[lo].abs() <= vals[hi].abs() { lo } else { hi })
                .collect();
            pins.sort_unstable();
            pins.dedup();
            if pins == last_pins {
                if let Some(ex) = certify(l, n, &a, &pins) {
                    return Some(ex);
                }
                break;
            }
            // orthogonal projection onto the complement of the pinned rows
            let mut basis: Vec<Vec<f64>> = Vec::new();
            for &p in &pins {
                let mut v = l.float[p].clone();
                for q in &basis {
                    let c = dot(&v, q);
                    v.iter_mut().zip(q).for_each(|(x, y)| *x -= c * y);
                }
                if normalize_f(&mut v) {
                    basis.push(v);
                }
            }
            for q in &basis {
                let c = dot(&a, q);
                a.iter_mut().zip(q).for_each(|(x, y)| *x -= c * y);
            }
            if !normalize_f(&mut a) {
                break;
            }
            last_pins = pins;
        }
    }
    None
}

/// Exact coefficient vector vanishing on the pinned points, near `a`, if it bisects.
fn certify(l: &Lifted, n: usize, a: &[f64], pins: &[usize]) -> Option<Vec<Rational>> {
    let rows: Vec<Vec<Rational>> = pins.iter().map(|&p| l.exact[p].clone()).collect();
    let m = Matrix::from_rows(rows, n);
    let null = m.nullspace();
    if null.is_empty() {
        return None;
    }
    // keep the free coordinates of a and solve for the pivots
    let mut ex = vec![Rational::zero(); n];
    for v in &null {
        let free = v.iter().rposition(|x| *x == Rational::from_integer(1.into()))?;
        let c = from_f64_approx(a[free], 1 << 24);
        for (e, x) in ex.iter_mut().zip(v) {
            *e += &c * x;
        }
    }
    (ex.iter().any(|x| !x.is_zero()) && l.valid_exact(&ex)).then_some(ex)
}
