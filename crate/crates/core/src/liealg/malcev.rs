use num_traits::Zero;

use super::algebra::NilpotentAlgebra;
use super::bch::bch_poly;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, RowBasis};
use crate::polyalg::{lie_bracket, Poly, VectorField};
use crate::rational::Rational;

/// Ordered basis `Y_1, ..., Y_N` whose tails `span(Y_k, ..., Y_N)` are
/// subalgebras; the last `N - split` vectors span the given subalgebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MalcevBasis {
    pub vectors: Vec<Vec<Rational>>,
    pub split: usize,
}

fn in_span(basis: &[Vec<Rational>], v: &[Rational]) -> bool {
    let mut rb = RowBasis::new();
    for b in basis {
        rb.insert(b);
    }
    rb.contains(v)
}

/// Reduced echelon basis of the span.
fn echelon(vecs: &[Vec<Rational>], n: usize) -> Vec<Vec<Rational>> {
    if vecs.is_empty() {
        return Vec::new();
    }
    let mut m = Matrix::from_rows(vecs.to_vec(), n);
    let r = m.rref().len();
    (0..r).map(|i| m.row(i).to_vec()).collect()
}

fn combine(coeffs: &[Rational], vecs: &[Vec<Rational>], n: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); n];
    for (c, v) in coeffs.iter().zip(vecs) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(v) {
            *o += c * x;
        }
    }
    out
}

fn intersect(a: &[Vec<Rational>], b: &[Vec<Rational>], n: usize) -> Vec<Vec<Rational>> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    // sum alpha_i a_i - sum beta_j b_j = 0
    let cols = a.len() + b.len();
    let rows = (0..n)
        .map(|r| a.iter().map(|v| v[r].clone()).chain(b.iter().map(|v| -v[r].clone())).collect())
        .collect();
    let null = Matrix::from_rows(rows, cols).nullspace();
    let vecs: Vec<Vec<Rational>> = null.iter().map(|x| combine(&x[..a.len()], a, n)).collect();
    echelon(&vecs, n)
}

fn is_subalgebra(alg: &NilpotentAlgebra, basis: &[Vec<Rational>]) -> bool {
    basis
        .iter()
        .enumerate()
        .all(|(i, x)| basis[i + 1..].iter().all(|y| in_span(basis, &alg.bracket(x, y))))
}

/// `{X in U : [X, h] ⊆ h}`.
fn normalizer_in(alg: &NilpotentAlgebra, u: &[Vec<Rational>], h: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = alg.dim();
    let ann = if h.is_empty() {
        (0..n).map(|i| alg.unit(i)).collect()
    } else {
        Matrix::from_rows(h.to_vec(), n).nullspace()
    };
    let mut rows = Vec::new();
    for hb in h {
        let images: Vec<Vec<Rational>> = u.iter().map(|x| alg.bracket(x, hb)).collect();
        for a in &ann {
            rows.push(images.iter().map(|w| w.iter().zip(a).map(|(x, y)| x * y).sum()).collect());
        }
    }
    if rows.is_empty() {
        return u.to_vec();
    }
    let null = Matrix::from_rows(rows, u.len()).nullspace();
    echelon(&null.iter().map(|c| combine(c, u, n)).collect::<Vec<_>>(), n)
}

/// Extends the subalgebra `h` inside `u` one vector at a time through the
/// normalizer chain, preferring the deepest lower-central-series term and
/// the latest pivot. Returns the added vectors in the order added.
fn grow(alg: &NilpotentAlgebra, u: &[Vec<Rational>], h: &mut Vec<Vec<Rational>>) -> Vec<Vec<Rational>> {
    let n = alg.dim();
    let lcs = alg.lower_central_series();
    let target = echelon(u, n).len();
    let mut added = Vec::new();
    while echelon(h, n).len() < target {
        let norm = normalizer_in(alg, u, h);
        let pick = lcs
            .iter()
            .rev()
            .filter(|t| !t.is_empty())
            .find_map(|term| {
                intersect(&norm, term, n)
                    .into_iter()
                    .filter(|v| !in_span(h, v))
                    .max_by_key(|v| v.iter().position(|x| !x.is_zero()))
            })
            .expect("a proper subalgebra of a nilpotent algebra has a larger normalizer");
        h.push(pick.clone());
        added.push(pick);
    }
    added
}

fn check_z(alg: &NilpotentAlgebra, z: &[Vec<Rational>]) -> Result<()> {
    if let Some(v) = z.iter().find(|v| v.len() != alg.dim()) {
        return Err(Error::DimensionMismatch {
            expected: alg.dim(),
            got: v.len(),
        });
    }
    if echelon(z, alg.dim()).len() != z.len() {
        return Err(Error::NotSubalgebra("spanning vectors are dependent".into()));
    }
    if !is_subalgebra(alg, z) {
        return Err(Error::NotSubalgebra("span is not closed under the bracket".into()));
    }
    Ok(())
}

/// Weak Malcev basis through the subalgebra spanned by `z`.
pub fn weak_malcev_basis(alg: &NilpotentAlgebra, z: &[Vec<Rational>]) -> Result<MalcevBasis> {
    check_z(alg, z)?;
    let n = alg.dim();
    let all: Vec<Vec<Rational>> = (0..n).map(|i| alg.unit(i)).collect();
    let mut h = z.to_vec();
    let mut added = grow(alg, &all, &mut h);
    added.reverse();
    let split = added.len();
    added.extend(z.iter().cloned());
    Ok(MalcevBasis { vectors: added, split })
}

/// Weak Malcev basis through `z` with `first` as `Y_1`; requires
/// `first ∉ z + [g, g]`.
pub fn weak_malcev_basis_with_first(alg: &NilpotentAlgebra, z: &[Vec<Rational>], first: &[Rational]) -> Result<MalcevBasis> {
    check_z(alg, z)?;
    let n = alg.dim();
    let derived = alg.lower_central_series().get(1).cloned().unwrap_or_default();
    let mut w: Vec<Vec<Rational>> = z.iter().chain(&derived).cloned().collect();
    w = echelon(&w, n);
    if in_span(&w, first) {
        return Err(Error::InvalidParameter("first vector lies in z + [g, g]".into()));
    }
    // hyperplane ideal containing z + [g, g] and missing `first`
    let mut rb = RowBasis::new();
    for v in &w {
        rb.insert(v);
    }
    rb.insert(first);
    let mut ideal = w.clone();
    for i in 0..n {
        let e = alg.unit(i);
        if rb.insert(&e) {
            ideal.push(e);
        }
    }
    let mut h = z.to_vec();
    let mut added = grow(alg, &ideal, &mut h);
    added.push(first.to_vec());
    added.reverse();
    let split = added.len();
    added.extend(z.iter().cloned());
    Ok(MalcevBasis { vectors: added, split })
}

impl MalcevBasis {
    /// Whether each tail span is closed under the bracket.
    pub fn tails_closed(&self, alg: &NilpotentAlgebra) -> bool {
        (0..self.vectors.len()).all(|k| is_subalgebra(alg, &self.vectors[k..]))
    }

    /// The algebra rewritten in this basis.
    pub fn structure(&self, alg: &NilpotentAlgebra) -> Result<NilpotentAlgebra> {
        let n = alg.dim();
        if self.vectors.len() != n || echelon(&self.vectors, n).len() != n {
            return Err(Error::InvalidParameter("basis does not span the algebra".into()));
        }
        let mut rows = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let w = alg.bracket(&self.vectors[i], &self.vectors[j]);
                for (k, c) in self.coords(&w).into_iter().enumerate() {
                    if !c.is_zero() {
                        rows.push((i, j, k, c));
                    }
                }
            }
        }
        NilpotentAlgebra::new(n, alg.step(), &rows)
    }

    /// Coordinates of `w` in this basis.
    pub fn coords(&self, w: &[Rational]) -> Vec<Rational> {
        let n = self.vectors.len();
        // solve sum_k x_k Y_k = w
        let rows = (0..n)
            .map(|r| self.vectors.iter().map(|y| y[r].clone()).chain([w[r].clone()]).collect())
            .collect();
        let mut m = Matrix::from_rows(rows, n + 1);
        m.rref();
        (0..n).map(|k| m.get(k, n).clone()).collect()
    }
}

/// Fields on the quotient coordinates `(t_1, ..., t_split)` generating
/// `g -> exp(s Y_j) g` for each basis vector `Y_j`, with points written as
/// `exp(t_1 Y_1) ... exp(t_split Y_split)` modulo the tail subgroup.
pub fn pushforward_fields(alg: &NilpotentAlgebra, basis: &MalcevBasis) -> Result<Vec<VectorField>> {
    let b = basis.structure(alg)?;
    let n = b.dim();
    let q = basis.split;
    let nv = q + 1;
    let s = q;
    let zero = || vec![Poly::zero(nv); n];
    let along = |k: usize, c: Poly| {
        let mut v = zero();
        v[k] = c;
        v
    };
    let mut g = zero();
    for k in (0..q).rev() {
        g = bch_poly(&b, &along(k, Poly::var(nv, k)), &g)?;
    }
    let restrict: Vec<Poly> = (0..q).map(|i| Poly::var(q, i)).chain([Poly::zero(q)]).collect();
    let mut fields = Vec::with_capacity(n);
    for j in 0..n {
        let mut x = bch_poly(&b, &along(j, Poly::var(nv, s)), &g)?;
        let mut comps = Vec::with_capacity(q);
        for k in 0..q {
            let u = x[k].clone();
            comps.push(u.derivative(s).compose(&restrict)?);
            x = bch_poly(&b, &along(k, -&u), &x)?;
        }
        fields.push(VectorField::new(comps)?);
    }
    Ok(fields)
}

/// The sign `σ` with `[X_i, X_j] = σ sum_k c^k_ij X_k` for fields produced by
/// [`pushforward_fields`], using constants in the given basis; `None` if no
/// single sign fits.
pub fn bracket_sign(alg: &NilpotentAlgebra, basis: &MalcevBasis, fields: &[VectorField]) -> Result<Option<i8>> {
    let b = basis.structure(alg)?;
    let n = b.dim();
    let mut sigma: Option<i8> = None;
    for i in 0..n {
        for j in i + 1..n {
            let lhs = lie_bracket(&fields[i], &fields[j])?;
            let coeffs: Vec<Rational> = (0..n).map(|k| b.constant(i, j, k).clone()).collect();
            let rhs = VectorField::linear_combination(&coeffs, fields)?;
            if lhs.is_zero() && rhs.is_zero() {
                continue;
            }
            let s = if lhs == rhs {
                1
            } else if lhs == rhs.scale(&-Rational::from_integer(1.into())) {
                -1
            } else {
                return Ok(None);
            };
            if sigma.is_some_and(|t| t != s) {
                return Ok(None);
            }
            sigma = Some(s);
        }
    }
    Ok(Some(sigma.unwrap_or(1)))
}
