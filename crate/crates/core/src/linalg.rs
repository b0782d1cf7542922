//! Dense exact linear algebra over the rationals.

use num_traits::{One, Zero};

use crate::rational::Rational;

/// Row-major matrix of rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>, cols: usize) -> Self {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged matrix");
            data.extend(row);
        }
        Matrix { rows: r, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Reduced row echelon form in place; returns pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = self.get(r, c).recip();
            for k in c..self.cols {
                let v = self.get(r, k) * &inv;
                self.set(r, k, v);
            }
            for i in 0..self.rows {
                if i == r || self.get(i, c).is_zero() {
                    continue;
                }
                let f = self.get(i, c).clone();
                for k in c..self.cols {
                    if self.get(r, k).is_zero() {
                        continue;
                    }
                    let v = self.get(i, k) - &f * self.get(r, k);
                    self.set(i, k, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of the right nullspace `{v : A v = 0}`, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![Rational::zero(); self.cols];
            v[free] = Rational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -m.get(row, free).clone();
            }
            basis.push(v);
        }
        basis
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn determinant(&self) -> Rational {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let mut m = self.clone();
        let n = self.rows;
        let mut det = Rational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return Rational::zero();
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let piv = m.get(c, c).clone();
            det *= &piv;
            for i in c + 1..n {
                if m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c) / &piv;
                for k in c..n {
                    let v = m.get(i, k) - &f * m.get(c, k);
                    m.set(i, k, v);
                }
            }
        }
        det
    }
}

/// Rank of a list of vectors of equal length.
pub fn rank_of(vectors: &[Vec<Rational>]) -> usize {
    match vectors.first() {
        None => 0,
        Some(v) => Matrix::from_rows(vectors.to_vec(), v.len()).rank(),
    }
}

/// Incremental row basis used for independence tests.
#[derive(Clone, Debug, Default)]
pub struct RowBasis {
    /// Rows kept in echelon form: (pivot column, normalized row).
    rows: Vec<(usize, Vec<Rational>)>,
}

impl RowBasis {
    pub fn new() -> Self {
        RowBasis { rows: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let f = v[*p].clone();
            for (x, y) in v.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Adds `v` if independent; returns whether it was added.
    pub fn insert(&mut self, v: &[Rational]) -> bool {
        let mut r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[p].recip();
        for x in r.iter_mut() {
            *x *= &inv;
        }
        for (_, row) in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (x, y) in row.iter_mut().zip(&r) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        self.rows.push((p, r));
        true
    }
}
