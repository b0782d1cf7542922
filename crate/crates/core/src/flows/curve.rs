use num_traits::{One, Zero};

use crate::algebraic::UPoly;
use crate::error::{Error, Result};
use crate::polyalg::{apply_field, Poly, VectorField};
use crate::rational::Rational;

pub const DEFAULT_TERM_CAP: usize = 16;

/// Parametrized polynomial curve `t -> (c_1(t), ..., c_n(t))` with provenance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Curve {
    pub id: u64,
    pub family_tag: String,
    pub param: Vec<UPoly>,
    /// Coordinates of the generating field in the family's declared basis.
    pub generator_coords: Option<Vec<Rational>>,
    pub base_point: Vec<Rational>,
}

impl Curve {
    /// Builds a curve, checking that `param(0) = base_point`.
    pub fn new(
        id: u64,
        family_tag: impl Into<String>,
        param: Vec<UPoly>,
        base_point: Vec<Rational>,
        generator_coords: Option<Vec<Rational>>,
    ) -> Result<Self> {
        if param.len() != base_point.len() {
            return Err(Error::DimensionMismatch {
                expected: param.len(),
                got: base_point.len(),
            });
        }
        if param.iter().zip(&base_point).any(|(p, b)| &p.coeff(0) != b) {
            return Err(Error::InvalidParameter(format!("curve {id}: param(0) differs from base point")));
        }
        Ok(Curve {
            id,
            family_tag: family_tag.into(),
            param,
            generator_coords,
            base_point,
        })
    }

    /// One-point curve.
    pub fn singleton(id: u64, family_tag: impl Into<String>, point: Vec<Rational>) -> Self {
        Curve {
            id,
            family_tag: family_tag.into(),
            param: point.iter().cloned().map(UPoly::constant).collect(),
            generator_coords: None,
            base_point: point,
        }
    }

    /// Integral curve through `base` of `sum_i coords_i basis_i`, keeping the coordinates.
    pub fn from_flow(
        id: u64,
        family_tag: impl Into<String>,
        basis: &[VectorField],
        coords: Vec<Rational>,
        base: Vec<Rational>,
    ) -> Result<Self> {
        if coords.len() != basis.len() {
            return Err(Error::DimensionMismatch {
                expected: basis.len(),
                got: coords.len(),
            });
        }
        let field = VectorField::linear_combination(&coords, basis)?;
        let mut c = exp_flow(&field, &base, DEFAULT_TERM_CAP)?;
        c.id = id;
        c.family_tag = family_tag.into();
        c.generator_coords = Some(coords);
        Ok(c)
    }

    pub fn ambient_dim(&self) -> usize {
        self.param.len()
    }

    pub fn is_singleton(&self) -> bool {
        self.param.iter().all(UPoly::is_constant)
    }

    /// Largest component degree in the parameter.
    pub fn degree(&self) -> usize {
        self.param.iter().filter_map(UPoly::degree).max().unwrap_or(0)
    }

    pub fn eval(&self, t: &Rational) -> Vec<Rational> {
        self.param.iter().map(|p| p.eval(t)).collect()
    }

    pub fn velocity(&self) -> Vec<UPoly> {
        self.param.iter().map(UPoly::derivative).collect()
    }

    /// For planar curves `u -> (u, p(u))`, the graph polynomial `p`.
    pub fn graph_poly(&self) -> Option<&UPoly> {
        (self.param.len() == 2 && self.param[0] == UPoly::x()).then(|| &self.param[1])
    }
}

pub fn eval_curve(c: &Curve, t: &Rational) -> Vec<Rational> {
    c.eval(t)
}

/// Polynomial map `R^source -> R^target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectionMap {
    pub name: String,
    pub source_dim: usize,
    pub components: Vec<Poly>,
}

impl ProjectionMap {
    pub fn new(name: impl Into<String>, source_dim: usize, components: Vec<Poly>) -> Result<Self> {
        if components.len() >= source_dim {
            return Err(Error::InvalidParameter(format!(
                "projection target dimension {} must be below source dimension {source_dim}",
                components.len()
            )));
        }
        if let Some(c) = components.iter().find(|c| c.nvars() != source_dim) {
            return Err(Error::DimensionMismatch {
                expected: source_dim,
                got: c.nvars(),
            });
        }
        Ok(ProjectionMap {
            name: name.into(),
            source_dim,
            components,
        })
    }

    pub fn target_dim(&self) -> usize {
        self.components.len()
    }

    pub fn apply(&self, x: &[Rational]) -> Result<Vec<Rational>> {
        self.components.iter().map(|c| c.eval(x)).collect()
    }

    /// Whether `X pi_j = 0` identically for every component.
    pub fn annihilated_by(&self, x: &VectorField) -> Result<bool> {
        for c in &self.components {
            if !apply_field(x, c)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// `pi o c`, tagged with the projection name; generator coordinates are dropped.
pub fn project_curve(c: &Curve, pi: &ProjectionMap) -> Result<Curve> {
    if c.ambient_dim() != pi.source_dim {
        return Err(Error::DimensionMismatch {
            expected: pi.source_dim,
            got: c.ambient_dim(),
        });
    }
    let subs: Vec<Poly> = c.param.iter().map(UPoly::to_poly).collect();
    let param = pi
        .components
        .iter()
        .map(|p| p.compose(&subs).map(|q| UPoly::from_poly(&q)))
        .collect::<Result<Vec<_>>>()?;
    let base_point = pi.apply(&c.base_point)?;
    Ok(Curve {
        id: c.id,
        family_tag: format!("{}@{}", c.family_tag, pi.name),
        param,
        generator_coords: None,
        base_point,
    })
}

/// `X^k x_i` for `k = 0, 1, ...` until all vanish; errors past `term_cap`.
fn lie_series(x: &VectorField, term_cap: usize) -> Result<Vec<Vec<Poly>>> {
    let n = x.nvars();
    let mut terms = vec![(0..n).map(|i| Poly::var(n, i)).collect::<Vec<_>>()];
    loop {
        let last = terms.last().unwrap();
        if last.iter().all(Poly::is_zero) {
            terms.pop();
            return Ok(terms);
        }
        if terms.len() > term_cap {
            return Err(Error::NonPolynomialFlow { term_cap });
        }
        let next = last.iter().map(|p| apply_field(x, p)).collect::<Result<Vec<_>>>()?;
        terms.push(next);
    }
}

fn factorial(k: usize) -> Rational {
    (1..=k).fold(Rational::one(), |acc, j| acc * Rational::from_integer(j.into()))
}

/// The flow `t -> e^{tX}(base)` as a polynomial curve.
pub fn exp_flow(x: &VectorField, base: &[Rational], term_cap: usize) -> Result<Curve> {
    if base.len() != x.nvars() {
        return Err(Error::DimensionMismatch {
            expected: x.nvars(),
            got: base.len(),
        });
    }
    let terms = lie_series(x, term_cap)?;
    let mut coeffs = vec![vec![Rational::zero(); terms.len()]; x.nvars()];
    for (k, level) in terms.iter().enumerate() {
        let inv = factorial(k).recip();
        for (i, p) in level.iter().enumerate() {
            coeffs[i][k] = p.eval(base)? * &inv;
        }
    }
    Ok(Curve {
        id: 0,
        family_tag: "flow".into(),
        param: coeffs.into_iter().map(UPoly::new).collect(),
        generator_coords: None,
        base_point: base.to_vec(),
    })
}

/// `(x, t) -> e^{tX}(x)` symbolically, in `n + 1` variables with `t` last.
pub fn flow_map(x: &VectorField, term_cap: usize) -> Result<Vec<Poly>> {
    let n = x.nvars();
    let terms = lie_series(x, term_cap)?;
    let map: Vec<usize> = (0..n).collect();
    let mut out = vec![Poly::zero(n + 1); n];
    for (k, level) in terms.iter().enumerate() {
        let tk = Poly::var(n + 1, n).pow(k as u32).scale(&factorial(k).recip());
        for (i, p) in level.iter().enumerate() {
            out[i] = &out[i] + &(&p.embed(n + 1, &map) * &tk);
        }
    }
    Ok(out)
}
