use std::fmt;

use num_traits::Zero;
use serde::{Serialize, Serializer};

use crate::algebraic::{coeffs_in, resultant, AlgebraicReal, UPoly};
use crate::error::{Error, Result};
use crate::flows::Curve;
use crate::linalg::rank_of;
use crate::polyalg::Poly;
use crate::rational::Rational;

/// Exact point of `R^n`, ordered lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct AlgebraicPoint {
    pub coords: Vec<AlgebraicReal>,
}

impl AlgebraicPoint {
    pub fn from_rational(v: &[Rational]) -> Self {
        AlgebraicPoint {
            coords: v.iter().cloned().map(AlgebraicReal::Rational).collect(),
        }
    }

    /// `Some` when every coordinate is rational.
    pub fn as_rational(&self) -> Option<Vec<Rational>> {
        self.coords.iter().map(|c| c.as_rational().cloned()).collect()
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.coords.iter().map(AlgebraicReal::to_f64).collect()
    }
}

impl fmt::Display for AlgebraicPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for AlgebraicPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// A common point of two curves with the parameters reaching it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidenceRecord {
    pub id1: u64,
    pub id2: u64,
    pub point: AlgebraicPoint,
    pub s: AlgebraicReal,
    pub t: AlgebraicReal,
    /// `None` when tangency is not decided for this pair.
    pub tangential: Option<bool>,
}

impl IncidenceRecord {
    pub fn csv_row(&self) -> String {
        let tan = match self.tangential {
            Some(true) => "true",
            Some(false) => "false",
            None => "na",
        };
        format!("{},{},\"{}\",{}", self.id1, self.id2, self.point, tan)
    }
}

pub const CSV_HEADER: &str = "id1,id2,point,tangential";

fn zero() -> AlgebraicReal {
    AlgebraicReal::Rational(Rational::zero())
}

/// All real common points of two curves.
pub fn intersect_curves(c1: &Curve, c2: &Curve) -> Result<Vec<IncidenceRecord>> {
    if c1.ambient_dim() != c2.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: c1.ambient_dim(),
            got: c2.ambient_dim(),
        });
    }
    let mut out = match (c1.is_singleton(), c2.is_singleton()) {
        (true, true) => {
            if c1.base_point == c2.base_point {
                vec![record(c1, c2, AlgebraicPoint::from_rational(&c1.base_point), zero(), zero(), Some(true))]
            } else {
                Vec::new()
            }
        }
        (true, false) => point_on_curve(&c1.base_point, c2)
            .into_iter()
            .map(|t| record(c1, c2, AlgebraicPoint::from_rational(&c1.base_point), zero(), t, Some(true)))
            .collect(),
        (false, true) => point_on_curve(&c2.base_point, c1)
            .into_iter()
            .map(|s| record(c1, c2, AlgebraicPoint::from_rational(&c2.base_point), s, zero(), Some(true)))
            .collect(),
        (false, false) => general(c1, c2)?,
    };
    out.sort_by(|a, b| a.point.cmp(&b.point));
    out.dedup_by(|a, b| a.point == b.point);
    Ok(out)
}

fn record(
    c1: &Curve,
    c2: &Curve,
    point: AlgebraicPoint,
    s: AlgebraicReal,
    t: AlgebraicReal,
    tangential: Option<bool>,
) -> IncidenceRecord {
    IncidenceRecord {
        id1: c1.id,
        id2: c2.id,
        point,
        s,
        t,
        tangential,
    }
}

/// Parameters `t` with `c(t) = p`; at most the first is kept since the point is fixed.
fn point_on_curve(p: &[Rational], c: &Curve) -> Option<AlgebraicReal> {
    let mut g = UPoly::zero();
    for (ci, pi) in c.param.iter().zip(p) {
        let d = ci - &UPoly::constant(pi.clone());
        if d.is_zero() {
            continue;
        }
        if d.is_constant() {
            return None;
        }
        g = g.gcd(&d);
        if g.is_constant() && !g.is_zero() {
            return None;
        }
    }
    AlgebraicReal::roots_of(&g).into_iter().next()
}

/// `c1_i(s) - c2_i(t)` in variables `(s, t)`.
fn difference(c1: &UPoly, c2: &UPoly) -> Poly {
    let s = c1.to_poly().embed(2, &[0]);
    let t = c2.to_poly().embed(2, &[1]);
    &s - &t
}

/// Univariate eliminant in variable `keep` of the components `h`.
fn eliminant(h: &[Poly], keep: usize, ids: (u64, u64)) -> Result<UPoly> {
    let elim = 1 - keep;
    let mut g = UPoly::zero();
    let mut dependent = Vec::new();
    for p in h {
        if p.degree_in(elim) == 0 {
            let u = coeffs_in(p, elim).into_iter().next().unwrap_or_default();
            g = g.gcd(&u);
        } else {
            dependent.push(coeffs_in(p, elim));
        }
    }
    if !g.is_zero() {
        return Ok(g);
    }
    for i in 0..dependent.len() {
        for j in i + 1..dependent.len() {
            let r = resultant(&dependent[i], &dependent[j]);
            if !r.is_zero() {
                g = g.gcd(&r);
                if g.is_constant() {
                    return Ok(g);
                }
            }
        }
    }
    if g.is_zero() {
        return Err(Error::InfiniteIntersection(ids.0, ids.1));
    }
    Ok(g)
}

fn general(c1: &Curve, c2: &Curve) -> Result<Vec<IncidenceRecord>> {
    let ids = (c1.id, c2.id);
    let mut h = Vec::new();
    for (a, b) in c1.param.iter().zip(&c2.param) {
        let d = difference(a, b);
        if d.is_zero() {
            continue;
        }
        if d.is_constant() {
            return Ok(Vec::new());
        }
        h.push(d);
    }
    let g = eliminant(&h, 0, ids)?;
    let sigmas = AlgebraicReal::roots_of(&g);
    if sigmas.is_empty() {
        return Ok(Vec::new());
    }
    let graph = match (c1.graph_poly(), c2.graph_poly()) {
        (Some(p), Some(q)) => Some((p - q).derivative()),
        _ => None,
    };
    let tangency = |s: &AlgebraicReal, t: &AlgebraicReal| -> Option<bool> {
        if let Some(d) = &graph {
            return Some(s.is_root_of(d));
        }
        let (s, t) = (s.as_rational()?, t.as_rational()?);
        let v1: Vec<Rational> = c1.velocity().iter().map(|p| p.eval(s)).collect();
        let v2: Vec<Rational> = c2.velocity().iter().map(|p| p.eval(t)).collect();
        Some(rank_of(&[v1, v2]) < 2)
    };
    let mut taus: Option<Vec<AlgebraicReal>> = None;
    let mut out = Vec::new();
    for sigma in sigmas {
        if let Some(s) = sigma.as_rational() {
            let p1 = c1.eval(s);
            let mut ht = UPoly::zero();
            for (a, b) in p1.iter().zip(&c2.param) {
                ht = ht.gcd(&(b - &UPoly::constant(a.clone())));
            }
            for tau in AlgebraicReal::roots_of(&ht) {
                let tan = tangency(&sigma, &tau);
                out.push(record(c1, c2, AlgebraicPoint::from_rational(&p1), sigma.clone(), tau, tan));
            }
            continue;
        }
        if taus.is_none() {
            taus = Some(AlgebraicReal::roots_of(&eliminant(&h, 1, ids)?));
        }
        let xs: Vec<AlgebraicReal> = c1.param.iter().map(|p| sigma.eval_poly(p)).collect();
        for tau in taus.as_ref().unwrap() {
            let ys: Vec<AlgebraicReal> = c2.param.iter().map(|p| tau.eval_poly(p)).collect();
            if xs == ys {
                let tan = tangency(&sigma, tau);
                out.push(record(c1, c2, AlgebraicPoint { coords: xs.clone() }, sigma.clone(), tau.clone(), tan));
            }
        }
    }
    Ok(out)
}

/// Whether two graph curves `u -> (u, p(u))`, `u -> (u, q(u))` meet tangentially.
pub fn tangent_pair(c1: &Curve, c2: &Curve) -> Result<bool> {
    let (p, q) = match (c1.graph_poly(), c2.graph_poly()) {
        (Some(p), Some(q)) => (p, q),
        _ => return Err(Error::InvalidParameter("tangent_pair needs planar graph curves".into())),
    };
    let d = p - q;
    if d.is_zero() {
        return Err(Error::InfiniteIntersection(c1.id, c2.id));
    }
    let g = d.gcd(&d.derivative());
    Ok(!g.is_constant() && !AlgebraicReal::roots_of(&g).is_empty())
}
