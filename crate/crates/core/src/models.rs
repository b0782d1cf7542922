//! Built-in vector field systems with their annihilating projections.

use num_traits::One;

use crate::error::{Error, Result};
use crate::flows::ProjectionMap;
use crate::polyalg::{Poly, VectorField};
use crate::rational::{frac, Rational};

/// Generators `X_1..X_m` on `R^n`; `projections[j]` is annihilated by `fields[j]`.
#[derive(Clone, Debug)]
pub struct FieldSystem {
    pub name: String,
    pub dim: usize,
    pub fields: Vec<VectorField>,
    pub projections: Vec<ProjectionMap>,
}

fn field(n: usize, comps: Vec<Poly>) -> VectorField {
    VectorField::new(comps).unwrap_or_else(|_| panic!("built-in field in dimension {n} is well formed"))
}

fn var(n: usize, i: usize) -> Poly {
    Poly::var(n, i)
}

/// `X = d/dx - y/2 d/dt`, `Y = d/dy + x/2 d/dt` on `(x, y, t)`.
pub fn heisenberg() -> FieldSystem {
    let n = 3;
    let half = frac(1, 2);
    let x = field(n, vec![Poly::one(n), Poly::zero(n), var(n, 1).scale(&-half.clone())]);
    let y = field(n, vec![Poly::zero(n), Poly::one(n), var(n, 0).scale(&half)]);
    let xy = &var(n, 0) * &var(n, 1);
    let pi_x = ProjectionMap::new("piX", n, vec![var(n, 1), &var(n, 2) + &xy.scale(&half)]).unwrap();
    let pi_y = ProjectionMap::new("piY", n, vec![var(n, 0), &var(n, 2) - &xy.scale(&half)]).unwrap();
    FieldSystem {
        name: "heisenberg".into(),
        dim: n,
        fields: vec![x, y],
        projections: vec![pi_x, pi_y],
    }
}

/// `(X, Y, T)`, a basis of the Heisenberg algebra.
pub fn heisenberg_basis() -> Vec<VectorField> {
    let h = heisenberg();
    let mut b = h.fields;
    b.push(VectorField::coordinate(3, 2));
    b
}

/// `X_omega = m X + Y`, i.e. `omega = (m, 1)` with `m = cot(theta)`.
pub fn heisenberg_omega(m: &Rational) -> VectorField {
    let h = heisenberg();
    VectorField::linear_combination(&[m.clone(), Rational::one()], &h.fields).unwrap()
}

fn gamma_component(n: usize, t: usize, i: u32) -> Poly {
    var(n, t).pow(i)
}

fn gamma_prime_component(n: usize, t: usize, i: u32) -> Poly {
    var(n, t).pow(i - 1).scale(&Rational::from_integer(i.into()))
}

/// Moment curve lift on `(x_1..x_d, t)`: `X_1 = d/dt`, `X_2 = d/dt - gamma'(t) . grad_x`.
pub fn moment_lift(d: usize) -> Result<FieldSystem> {
    if d < 1 {
        return Err(Error::InvalidParameter("moment lift needs d >= 1".into()));
    }
    let n = d + 1;
    let t = d;
    let x1 = VectorField::coordinate(n, t);
    let mut comps: Vec<Poly> = (1..=d as u32).map(|i| -&gamma_prime_component(n, t, i)).collect();
    comps.push(Poly::one(n));
    let x2 = field(n, comps);
    let pi1 = ProjectionMap::new("pi1", n, (0..d).map(|i| var(n, i)).collect())?;
    let pi2 = ProjectionMap::new(
        "pi2",
        n,
        (0..d).map(|i| &var(n, i) + &gamma_component(n, t, i as u32 + 1)).collect(),
    )?;
    Ok(FieldSystem {
        name: format!("moment{d}"),
        dim: n,
        fields: vec![x1, x2],
        projections: vec![pi1, pi2],
    })
}

/// Restricted X-ray lift on `(x_1..x_{n-2}, s, t)`: `X_1 = d/ds`, `X_2 = d/dt - s gamma'(t) . grad_x`.
pub fn xray(n: usize) -> Result<FieldSystem> {
    if n < 3 {
        return Err(Error::InvalidParameter("x-ray lift needs n >= 3".into()));
    }
    let d = n - 2;
    let (s, t) = (d, d + 1);
    let x1 = VectorField::coordinate(n, s);
    let mut comps: Vec<Poly> = (1..=d as u32)
        .map(|i| -&(&var(n, s) * &gamma_prime_component(n, t, i)))
        .collect();
    comps.push(Poly::zero(n));
    comps.push(Poly::one(n));
    let x2 = field(n, comps);
    let mut p1: Vec<Poly> = (0..d).map(|i| var(n, i)).collect();
    p1.push(var(n, t));
    let mut p2 = vec![var(n, s)];
    p2.extend((0..d).map(|i| &var(n, i) + &(&var(n, s) * &gamma_component(n, t, i as u32 + 1))));
    Ok(FieldSystem {
        name: format!("xray{n}"),
        dim: n,
        fields: vec![x1, x2],
        projections: vec![ProjectionMap::new("pi1", n, p1)?, ProjectionMap::new("pi2", n, p2)?],
    })
}

/// Coordinate fields on `R^n`; `pi_j` forgets coordinate `j`.
pub fn loomis_whitney(n: usize) -> Result<FieldSystem> {
    if n < 2 {
        return Err(Error::InvalidParameter("Loomis-Whitney needs n >= 2".into()));
    }
    let fields = (0..n).map(|i| VectorField::coordinate(n, i)).collect();
    let projections = (0..n)
        .map(|j| ProjectionMap::new(format!("pi{}", j + 1), n, (0..n).filter(|&i| i != j).map(|i| var(n, i)).collect()))
        .collect::<Result<Vec<_>>>()?;
    Ok(FieldSystem {
        name: format!("lw{n}"),
        dim: n,
        fields,
        projections,
    })
}

/// Every built-in system at small dimensions, plus sample `X_omega` slopes.
pub fn builtin_systems() -> Vec<FieldSystem> {
    let mut out = vec![heisenberg()];
    for m in [frac(0, 1), frac(1, 1), frac(-3, 2)] {
        let h = heisenberg();
        let x = h.fields[0].clone();
        out.push(FieldSystem {
            name: format!("heisenberg_omega({m})"),
            dim: 3,
            fields: vec![x, heisenberg_omega(&m)],
            projections: vec![h.projections[0].clone()],
        });
    }
    for d in 1..=4 {
        out.push(moment_lift(d).unwrap());
    }
    for n in 3..=5 {
        out.push(xray(n).unwrap());
    }
    for n in 2..=4 {
        out.push(loomis_whitney(n).unwrap());
    }
    out
}
