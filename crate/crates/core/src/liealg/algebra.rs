use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::RowBasis;
use crate::polyalg::Poly;
use crate::rational::{parse_rational, Rational};

/// Highest nilpotency step supported by the BCH tables.
pub const MAX_STEP: usize = 6;

/// Lie algebra on `R^dim` given by structure constants `[e_i, e_j] = sum_k c^k_ij e_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NilpotentAlgebra {
    dim: usize,
    step: usize,
    /// Index `(i * dim + j) * dim + k`, 0-based.
    c: Vec<Rational>,
}

impl NilpotentAlgebra {
    /// Builds from 0-based rows `(i, j, k, c^k_ij)`. A missing `(j, i, k)` entry is
    /// filled in antisymmetrically; conflicting entries are kept and reported by
    /// [`check_algebra`].
    pub fn new(dim: usize, step: usize, rows: &[(usize, usize, usize, Rational)]) -> Result<Self> {
        let mut c = vec![Rational::zero(); dim * dim * dim];
        let mut given = vec![false; dim * dim * dim];
        for (i, j, k, v) in rows {
            for &x in [i, j, k] {
                if x >= dim {
                    return Err(Error::IndexOutOfRange { index: x, len: dim });
                }
            }
            let at = (i * dim + j) * dim + k;
            c[at] = v.clone();
            given[at] = true;
        }
        for (i, j, k, v) in rows {
            let at = (j * dim + i) * dim + k;
            if !given[at] {
                c[at] = -v.clone();
            }
        }
        Ok(NilpotentAlgebra { dim, step, c })
    }

    pub fn abelian(dim: usize) -> Self {
        NilpotentAlgebra::new(dim, 1, &[]).expect("valid")
    }

    /// `[e1, e2] = e3`.
    pub fn heisenberg() -> Self {
        NilpotentAlgebra::new(3, 2, &[(0, 1, 2, Rational::from_integer(1.into()))]).expect("valid")
    }

    /// Free nilpotent algebra on two generators, step 1, 2 or 3, in a Hall basis.
    pub fn free_two_generator(step: usize) -> Result<Self> {
        let one = || Rational::from_integer(1.into());
        match step {
            1 => Ok(NilpotentAlgebra::abelian(2)),
            2 => Ok(NilpotentAlgebra::heisenberg()),
            // e3 = [e1,e2], e4 = [e1,e3], e5 = [e2,e3]
            3 => NilpotentAlgebra::new(5, 3, &[(0, 1, 2, one()), (0, 2, 3, one()), (1, 2, 4, one())]),
            _ => Err(Error::InvalidParameter(format!("free two-generator algebras available for step 1..=3, got {step}"))),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn step(&self) -> usize {
        self.step
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.c[(i * self.dim + j) * self.dim + k]
    }

    /// Nonzero constants as `(i, j, k, c)`, all orders.
    pub fn nonzero(&self) -> impl Iterator<Item = (usize, usize, usize, &Rational)> {
        let n = self.dim;
        self.c
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(move |(at, v)| (at / (n * n), (at / n) % n, at % n, v))
    }

    pub fn bracket(&self, u: &[Rational], v: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim];
        for (i, j, k, c) in self.nonzero() {
            if u[i].is_zero() || v[j].is_zero() {
                continue;
            }
            out[k] += c * &u[i] * &v[j];
        }
        out
    }

    /// Bracket of vectors with polynomial coordinates.
    pub fn bracket_poly(&self, u: &[Poly], v: &[Poly]) -> Vec<Poly> {
        let nvars = u.first().map_or(0, Poly::nvars);
        let mut out = vec![Poly::zero(nvars); self.dim];
        for (i, j, k, c) in self.nonzero() {
            if u[i].is_zero() || v[j].is_zero() {
                continue;
            }
            out[k] = &out[k] + &(&u[i] * &v[j]).scale(c);
        }
        out
    }

    pub fn unit(&self, i: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.dim];
        v[i] = Rational::from_integer(1.into());
        v
    }

    /// Dimensions of `g = g^1 ⊇ g^2 ⊇ ...` down to the first zero term, or up to
    /// `dim + 1` terms if the series stalls.
    pub fn lower_central_series(&self) -> Vec<Vec<Vec<Rational>>> {
        let mut terms = vec![(0..self.dim).map(|i| self.unit(i)).collect::<Vec<_>>()];
        while terms.len() <= self.dim + 1 {
            let last = terms.last().unwrap();
            if last.is_empty() {
                break;
            }
            let mut rb = RowBasis::new();
            let mut next = Vec::new();
            for i in 0..self.dim {
                for v in last {
                    let w = self.bracket(&self.unit(i), v);
                    if rb.insert(&w) {
                        next.push(w);
                    }
                }
            }
            if next.len() == last.len() {
                terms.push(next);
                break;
            }
            terms.push(next);
        }
        terms
    }

    /// Parses the text format: `dim N`, `step S`, then rows `i j k p/q` with
    /// 1-based indices. `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let (mut dim, mut step) = (None, None);
        let mut rows = Vec::new();
        for (no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: String| Error::Parse { line: no + 1, msg };
            let f: Vec<&str> = line.split_whitespace().collect();
            let int = |s: &str| s.parse::<usize>().map_err(|e| err(format!("bad integer {s:?}: {e}")));
            match f[0] {
                "dim" if f.len() == 2 => dim = Some(int(f[1])?),
                "step" if f.len() == 2 => step = Some(int(f[1])?),
                _ if f.len() == 4 => {
                    let (i, j, k) = (int(f[0])?, int(f[1])?, int(f[2])?);
                    if i == 0 || j == 0 || k == 0 {
                        return Err(err("indices are 1-based".into()));
                    }
                    let c = parse_rational(f[3]).map_err(|e| err(e.to_string()))?;
                    rows.push((i - 1, j - 1, k - 1, c));
                }
                _ => return Err(err(format!("expected `dim N`, `step S` or `i j k c`, got {line:?}"))),
            }
        }
        let missing = |what: &str| Error::Parse {
            line: 0,
            msg: format!("missing `{what}` line"),
        };
        let dim = dim.ok_or_else(|| missing("dim"))?;
        let step = step.ok_or_else(|| missing("step"))?;
        NilpotentAlgebra::new(dim, step, &rows)
    }
}

impl fmt::Display for NilpotentAlgebra {
    /// Canonical text: rows with `i < j` only.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "dim {}", self.dim)?;
        writeln!(f, "step {}", self.step)?;
        for (i, j, k, c) in self.nonzero() {
            if i < j {
                writeln!(f, "{} {} {} {}", i + 1, j + 1, k + 1, c)?;
            }
        }
        Ok(())
    }
}

/// Outcome of [`check_algebra`]; all indices 1-based.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct AlgebraReport {
    /// `(i, j, k)` with `c^k_ij != -c^k_ji`.
    pub antisymmetry: Vec<(usize, usize, usize)>,
    /// `(i, j, l)`, `i < j < l`, whose Jacobi sum is nonzero.
    pub jacobi: Vec<(usize, usize, usize)>,
    /// Dimensions of the lower central series.
    pub lower_central_dims: Vec<usize>,
    /// Actual nilpotency step, if nilpotent.
    pub step: Option<usize>,
    pub declared_step: usize,
}

impl AlgebraReport {
    pub fn valid(&self) -> bool {
        self.antisymmetry.is_empty() && self.jacobi.is_empty() && self.step.is_some_and(|s| s <= self.declared_step)
    }
}

pub fn check_algebra(a: &NilpotentAlgebra) -> AlgebraReport {
    let n = a.dim;
    let mut antisymmetry = Vec::new();
    for i in 0..n {
        for j in i..n {
            for k in 0..n {
                if *a.constant(i, j, k) != -a.constant(j, i, k).clone() {
                    antisymmetry.push((i + 1, j + 1, k + 1));
                }
            }
        }
    }
    let mut jacobi = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for l in j + 1..n {
                let (x, y, z) = (a.unit(i), a.unit(j), a.unit(l));
                let s1 = a.bracket(&x, &a.bracket(&y, &z));
                let s2 = a.bracket(&y, &a.bracket(&z, &x));
                let s3 = a.bracket(&z, &a.bracket(&x, &y));
                if (0..n).any(|k| !(&s1[k] + &s2[k] + &s3[k]).is_zero()) {
                    jacobi.push((i + 1, j + 1, l + 1));
                }
            }
        }
    }
    let lcs = a.lower_central_series();
    let lower_central_dims: Vec<usize> = lcs.iter().map(Vec::len).collect();
    // g^(s+1) = 0 sits at index s
    let step = lcs.iter().position(Vec::is_empty);
    AlgebraReport {
        antisymmetry,
        jacobi,
        lower_central_dims,
        step,
        declared_step: a.step,
    }
}
