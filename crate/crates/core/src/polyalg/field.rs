use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use super::poly::{Monomial, Poly};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, RowBasis};
use crate::rational::Rational;

/// Polynomial vector field `sum_i X^i d/dx_i` on Q^n.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VectorField {
    components: Vec<Poly>,
}

impl VectorField {
    pub fn new(components: Vec<Poly>) -> Result<Self> {
        let n = components.len();
        if let Some(bad) = components.iter().find(|c| c.nvars() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: bad.nvars(),
            });
        }
        Ok(VectorField { components })
    }

    /// Parses `[p1, p2, ..., pn]`.
    pub fn parse(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| Error::Parse {
                line: 0,
                msg: format!("vector field must be bracketed: {s:?}"),
            })?;
        let parts: Vec<&str> = inner.split(',').collect();
        let n = parts.len();
        let comps = parts
            .iter()
            .map(|p| Poly::parse(p, n))
            .collect::<Result<Vec<_>>>()?;
        VectorField::new(comps)
    }

    pub fn zero(n: usize) -> Self {
        VectorField {
            components: vec![Poly::zero(n); n],
        }
    }

    /// The constant field `d/dx_{i+1}`.
    pub fn coordinate(n: usize, i: usize) -> Self {
        let mut c = vec![Poly::zero(n); n];
        c[i] = Poly::one(n);
        VectorField { components: c }
    }

    pub fn nvars(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Poly] {
        &self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Poly::is_zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        VectorField {
            components: self.components.iter().map(|p| p.scale(c)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other.nvars())?;
        Ok(VectorField {
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&Rational::from_integer((-1).into())))
    }

    /// `sum_k c_k F_k`; all fields must share a dimension.
    pub fn linear_combination(coeffs: &[Rational], fields: &[VectorField]) -> Result<Self> {
        let n = fields.first().map(|f| f.nvars()).unwrap_or(0);
        let mut acc = VectorField::zero(n);
        for (c, f) in coeffs.iter().zip(fields) {
            if !c.is_zero() {
                acc = acc.add(&f.scale(c))?;
            }
        }
        Ok(acc)
    }

    pub fn eval(&self, point: &[Rational]) -> Result<Vec<Rational>> {
        self.components.iter().map(|c| c.eval(point)).collect()
    }

    fn check(&self, n: usize) -> Result<()> {
        if n != self.nvars() {
            return Err(Error::DimensionMismatch {
                expected: self.nvars(),
                got: n,
            });
        }
        Ok(())
    }
}

impl fmt::Display for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

/// The derivation `X f = sum_i X^i df/dx_i`.
pub fn apply_field(x: &VectorField, f: &Poly) -> Result<Poly> {
    x.check(f.nvars())?;
    let mut out = Poly::zero(f.nvars());
    for (i, xi) in x.components.iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        let d = f.derivative(i);
        if !d.is_zero() {
            out = &out + &(xi * &d);
        }
    }
    Ok(out)
}

/// `[X, Y]^i = X(Y^i) - Y(X^i)`.
pub fn lie_bracket(x: &VectorField, y: &VectorField) -> Result<VectorField> {
    x.check(y.nvars())?;
    let components = x
        .components
        .iter()
        .zip(&y.components)
        .map(|(xi, yi)| Ok(&apply_field(x, yi)? - &apply_field(y, xi)?))
        .collect::<Result<Vec<_>>>()?;
    Ok(VectorField { components })
}

/// Word over 1-based generator labels.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BracketWord(Vec<usize>);

impl BracketWord {
    pub fn new(letters: Vec<usize>) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::InvalidParameter("empty bracket word".into()));
        }
        if letters.contains(&0) {
            return Err(Error::InvalidParameter("bracket word letters are 1-based".into()));
        }
        Ok(BracketWord(letters))
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Occurrence count of each of the `m` generators.
    pub fn degree_vector(&self, m: usize) -> Vec<u32> {
        let mut d = vec![0; m];
        for &l in &self.0 {
            if l <= m {
                d[l - 1] += 1;
            }
        }
        d
    }

    fn prepend(&self, letter: usize) -> Self {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.push(letter);
        v.extend_from_slice(&self.0);
        BracketWord(v)
    }
}

impl fmt::Display for BracketWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|l| l.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

/// Right-nested bracket `[X_{w1},[X_{w2},[...,X_{wk}]]]` with its degree vector.
pub fn iterated_bracket(generators: &[VectorField], w: &BracketWord) -> Result<(VectorField, Vec<u32>)> {
    for &l in w.letters() {
        if l > generators.len() {
            return Err(Error::IndexOutOfRange {
                index: l,
                len: generators.len(),
            });
        }
    }
    let letters = w.letters();
    let mut acc = generators[letters[letters.len() - 1] - 1].clone();
    for &l in letters[..letters.len() - 1].iter().rev() {
        acc = lie_bracket(&generators[l - 1], &acc)?;
    }
    Ok((acc, w.degree_vector(generators.len())))
}

/// Indices of a maximal Q-linearly independent subfamily, chosen greedily.
pub fn independent_subset(fields: &[VectorField]) -> Vec<usize> {
    let mut index: BTreeMap<(usize, Monomial), usize> = BTreeMap::new();
    for f in fields {
        for (i, c) in f.components.iter().enumerate() {
            for (m, _) in c.terms() {
                let next = index.len();
                index.entry((i, m.clone())).or_insert(next);
            }
        }
    }
    let width = index.len();
    let mut basis = RowBasis::new();
    let mut keep = Vec::new();
    for (k, f) in fields.iter().enumerate() {
        let mut v = vec![Rational::zero(); width];
        for (i, c) in f.components.iter().enumerate() {
            for (m, coef) in c.terms() {
                v[index[&(i, m.clone())]] = coef.clone();
            }
        }
        if basis.insert(&v) {
            keep.push(k);
        }
    }
    keep
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NilpotencyStep {
    Step(usize),
    CapExceeded { cap: usize },
}

/// Result of closing a generator family under right-nested brackets.
#[derive(Clone, Debug)]
pub struct GeneratedAlgebra {
    pub basis: Vec<(VectorField, BracketWord)>,
    pub step: NilpotencyStep,
    /// Independent representatives of each bracket length, level 1 first.
    pub levels: Vec<Vec<(VectorField, BracketWord)>>,
}

impl GeneratedAlgebra {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }
}

pub const DEFAULT_STEP_CAP: usize = 8;

fn next_level(
    generators: &[VectorField],
    prev: &[(VectorField, BracketWord)],
) -> Result<Vec<(VectorField, BracketWord)>> {
    let mut cand = Vec::new();
    for (a, g) in generators.iter().enumerate() {
        for (f, w) in prev {
            let b = lie_bracket(g, f)?;
            if !b.is_zero() {
                cand.push((b, w.prepend(a + 1)));
            }
        }
    }
    let fields: Vec<VectorField> = cand.iter().map(|(f, _)| f.clone()).collect();
    let keep = independent_subset(&fields);
    Ok(keep.into_iter().map(|k| cand[k].clone()).collect())
}

/// Spans the Lie algebra generated by `generators` using brackets with at
/// most `step_cap` letters, and reports the nilpotency step.
pub fn generated_algebra(generators: &[VectorField], step_cap: usize) -> Result<GeneratedAlgebra> {
    if step_cap == 0 {
        return Err(Error::InvalidParameter("step_cap must be at least 1".into()));
    }
    let n = generators.first().map(|g| g.nvars()).unwrap_or(0);
    for g in generators {
        g.check(n)?;
    }
    let first: Vec<(VectorField, BracketWord)> = generators
        .iter()
        .enumerate()
        .filter(|(_, g)| !g.is_zero())
        .map(|(i, g)| (g.clone(), BracketWord(vec![i + 1])))
        .collect();
    let first = {
        let fields: Vec<_> = first.iter().map(|(f, _)| f.clone()).collect();
        independent_subset(&fields)
            .into_iter()
            .map(|k| first[k].clone())
            .collect::<Vec<_>>()
    };
    let mut levels = vec![first];
    let mut step = None;
    if levels[0].is_empty() {
        step = Some(NilpotencyStep::Step(0));
    }
    while step.is_none() {
        let k = levels.len();
        let next = next_level(generators, &levels[k - 1])?;
        if next.is_empty() {
            step = Some(NilpotencyStep::Step(k));
        } else if k == step_cap {
            step = Some(NilpotencyStep::CapExceeded { cap: step_cap });
        } else {
            levels.push(next);
        }
    }
    let all: Vec<(VectorField, BracketWord)> = levels.iter().flatten().cloned().collect();
    let fields: Vec<VectorField> = all.iter().map(|(f, _)| f.clone()).collect();
    let basis = independent_subset(&fields)
        .into_iter()
        .map(|k| all[k].clone())
        .collect();
    Ok(GeneratedAlgebra {
        basis,
        step: step.expect("loop sets step"),
        levels,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HormanderReport {
    pub rank: usize,
    /// Least bracket length at which the values span Q^n, if reached.
    pub order: Option<usize>,
}

impl HormanderReport {
    pub fn satisfied(&self) -> bool {
        self.order.is_some()
    }
}

/// Rank of all brackets of length `<= order_cap` evaluated at `point`.
pub fn hormander_check(fields: &[VectorField], point: &[Rational], order_cap: usize) -> Result<HormanderReport> {
    let n = point.len();
    for f in fields {
        f.check(n)?;
    }
    let mut basis = RowBasis::new();
    let mut order = None;
    let mut level: Vec<(VectorField, BracketWord)> = fields
        .iter()
        .enumerate()
        .map(|(i, f)| (f.clone(), BracketWord(vec![i + 1])))
        .collect();
    for k in 1..=order_cap {
        for (f, _) in &level {
            basis.insert(&f.eval(point)?);
        }
        if basis.len() == n {
            order = Some(k);
            break;
        }
        if k < order_cap {
            level = next_level(fields, &level)?;
            if level.is_empty() {
                break;
            }
        }
    }
    Ok(HormanderReport {
        rank: basis.len(),
        order,
    })
}

/// `det(X_{w_1}, ..., X_{w_n})` at a point.
pub fn bracket_determinant(generators: &[VectorField], words: &[BracketWord], point: &[Rational]) -> Result<Rational> {
    let rows = words
        .iter()
        .map(|w| iterated_bracket(generators, w).and_then(|(f, _)| f.eval(point)))
        .collect::<Result<Vec<_>>>()?;
    if rows.len() != point.len() {
        return Err(Error::DimensionMismatch {
            expected: point.len(),
            got: rows.len(),
        });
    }
    Ok(Matrix::from_rows(rows, point.len()).determinant())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContinuumExponents {
    pub p: Vec<Rational>,
    /// Set when the total letter count is one, so every numerator vanishes.
    pub degenerate: bool,
}

/// `p_j = (sum_i |w_i| - 1) / (sum_i deg_j w_i)` for spanning words `w_1..w_n`.
pub fn continuum_exponents(words: &[BracketWord], m: usize) -> Result<ContinuumExponents> {
    let mut deg = vec![0u64; m];
    let mut total = 0u64;
    for w in words {
        for &l in w.letters() {
            if l > m {
                return Err(Error::IndexOutOfRange { index: l, len: m });
            }
            deg[l - 1] += 1;
            total += 1;
        }
    }
    if let Some(j) = deg.iter().position(|&d| d == 0) {
        return Err(Error::ZeroDenominator(j + 1));
    }
    let numer = total.saturating_sub(1);
    let p = deg
        .iter()
        .map(|&d| Rational::new(numer.into(), d.into()))
        .collect();
    Ok(ContinuumExponents {
        p,
        degenerate: numer == 0,
    })
}
