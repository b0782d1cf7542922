//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Terms are kept in a `BTreeMap` keyed by exponent vectors ordered
//! graded-lexicographically, so two polynomials are equal exactly when
//! their maps are equal. Zero coefficients are never stored.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{parse_rational, Rational};

/// Exponent vector, ordered by total degree first, then lexicographically
/// with `x1` most significant.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Poly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(nvars), c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Poly::constant(nvars, Rational::one())
    }

    /// The coordinate function `x_{i+1}` (0-based `i`).
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index out of range");
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Poly::zero(nvars);
        p.terms.insert(Monomial(e), Rational::one());
        p
    }

    pub fn monomial(nvars: usize, exps: Vec<u32>, c: Rational) -> Self {
        assert_eq!(exps.len(), nvars);
        let mut p = Poly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Monomial(exps), c);
        }
        p
    }

    /// Builds from `(exponents, coefficient)` pairs, merging duplicates.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, Rational)>,
    {
        let mut p = Poly::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length");
            p.add_term(Monomial(e), c);
        }
        p
    }

    /// Univariate polynomial from ascending coefficients.
    pub fn univariate(coeffs: &[Rational]) -> Self {
        Poly::from_terms(
            1,
            coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| (vec![k as u32], c.clone())),
        )
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    pub fn constant_term(&self) -> Rational {
        self.terms
            .get(&Monomial::one(self.nvars))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u32]) -> Rational {
        self.terms
            .get(&Monomial(exps.to_vec()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(|m| m.degree())
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.0[var]).max().unwrap_or(0)
    }

    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            Some((_, c)) => {
                let inv = c.recip();
                self.scale(&inv)
            }
            None => self.clone(),
        }
    }

    /// Integer coefficients with content 1 and positive leading coefficient.
    pub fn primitive(&self) -> Poly {
        use num_integer::Integer;
        let Some((_, lc)) = self.leading() else {
            return self.clone();
        };
        let mut den = num_bigint::BigInt::one();
        let mut num = num_bigint::BigInt::zero();
        for c in self.terms.values() {
            den = den.lcm(c.denom());
            num = num.gcd(c.numer());
        }
        let mut f = Rational::new(den, num);
        if lc.is_negative() {
            f = -f;
        }
        self.scale(&f)
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::one(self.nvars);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn derivative(&self, var: usize) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut n = m.0.clone();
            n[var] -= 1;
            out.add_term(Monomial(n), c * Rational::from_integer(e.into()));
        }
        out
    }

    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                got: point.len(),
            });
        }
        let mut sum = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t *= num_traits::pow(x.clone(), e as usize);
                }
            }
            sum += t;
        }
        Ok(sum)
    }

    /// Substitutes `subs[i]` for `x_{i+1}`; all substitutes share one ring.
    pub fn compose(&self, subs: &[Poly]) -> Result<Poly> {
        if subs.len() != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                got: subs.len(),
            });
        }
        let target = match subs.first() {
            Some(s) => s.nvars,
            None => 0,
        };
        if let Some(bad) = subs.iter().find(|s| s.nvars != target) {
            return Err(Error::DimensionMismatch {
                expected: target,
                got: bad.nvars,
            });
        }
        // cache powers per variable
        let mut powers: Vec<Vec<Poly>> = subs.iter().map(|s| vec![Poly::one(target), s.clone()]).collect();
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap() * &subs[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][e as usize];
            }
            out = &out + &t;
        }
        Ok(out)
    }

    /// Re-embeds into a ring with `nvars` variables; variable `i` maps to `map[i]`.
    pub fn embed(&self, nvars: usize, map: &[usize]) -> Poly {
        assert_eq!(map.len(), self.nvars);
        let mut out = Poly::zero(nvars);
        for (m, c) in &self.terms {
            let mut e = vec![0; nvars];
            for (i, &k) in m.0.iter().enumerate() {
                e[map[i]] += k;
            }
            out.add_term(Monomial(e), c.clone());
        }
        out
    }

    /// Dense ascending coefficients of a univariate polynomial.
    pub fn univariate_coeffs(&self) -> Vec<Rational> {
        assert_eq!(self.nvars, 1, "not univariate");
        let deg = self.degree().unwrap_or(0) as usize;
        let mut v = vec![Rational::zero(); if self.is_zero() { 0 } else { deg + 1 }];
        for (m, c) in &self.terms {
            v[m.0[0] as usize] = c.clone();
        }
        v
    }

    /// Parses the canonical text format, e.g. `3/2*x1^2*x3 - x2 + 1`.
    pub fn parse(s: &str, nvars: usize) -> Result<Poly> {
        parse_poly(s, nvars)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars, "ring mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars, "ring mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars, "ring mismatch");
        let mut out = Poly::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $f(self, rhs: Poly) -> Poly {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut factors: Vec<String> = Vec::new();
            if !mag.is_one() || m.degree() == 0 {
                factors.push(mag.to_string());
            }
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(format!("x{}", i + 1)),
                    _ => factors.push(format!("x{}^{}", i + 1, e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

fn parse_poly(s: &str, nvars: usize) -> Result<Poly> {
    let err = |msg: String| Error::Parse { line: 0, msg };
    let text: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if text.is_empty() {
        return Err(err("empty polynomial".into()));
    }
    // split into signed terms; a sign directly after '^' or '/' never occurs in valid input
    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut cur = String::new();
    let mut neg = false;
    for ch in text.chars() {
        if (ch == '+' || ch == '-') && !cur.is_empty() {
            terms.push((neg, std::mem::take(&mut cur)));
            neg = ch == '-';
        } else if ch == '+' || ch == '-' {
            if ch == '-' {
                neg = !neg;
            }
        } else {
            cur.push(ch);
        }
    }
    if cur.is_empty() {
        return Err(err(format!("dangling sign in {s:?}")));
    }
    terms.push((neg, cur));

    let mut p = Poly::zero(nvars);
    for (neg, body) in terms {
        let mut coeff = Rational::one();
        let mut exps = vec![0u32; nvars];
        for factor in body.split('*') {
            if factor.is_empty() {
                return Err(err(format!("empty factor in {body:?}")));
            }
            if let Some(rest) = factor.strip_prefix('x') {
                let (idx, pow) = match rest.split_once('^') {
                    Some((i, e)) => (i, e),
                    None => (rest, "1"),
                };
                let idx: usize = idx
                    .parse()
                    .map_err(|_| err(format!("bad variable {factor:?}")))?;
                let pow: u32 = pow
                    .parse()
                    .map_err(|_| err(format!("bad exponent in {factor:?}")))?;
                if idx == 0 || idx > nvars {
                    return Err(err(format!("variable x{idx} outside 1..={nvars}")));
                }
                exps[idx - 1] += pow;
            } else {
                coeff *= parse_rational(factor).map_err(|_| err(format!("bad coefficient {factor:?}")))?;
            }
        }
        if neg {
            coeff = -coeff;
        }
        p.add_term(Monomial(exps), coeff);
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, rat};

    #[test]
    fn canonical_text_round_trip() {
        let p = Poly::parse("3/2 * x1^2*x3 - x2 + 1", 3).unwrap();
        assert_eq!(p.to_string(), "3/2*x1^2*x3 - x2 + 1");
        assert_eq!(Poly::parse(&p.to_string(), 3).unwrap(), p);
        assert_eq!(Poly::zero(2).to_string(), "0");
        assert_eq!(Poly::parse("0", 2).unwrap(), Poly::zero(2));
        assert_eq!(Poly::parse("-x1 - -x1", 1).unwrap(), Poly::zero(1));
    }

    #[test]
    fn parse_errors() {
        assert!(Poly::parse("x3", 2).is_err());
        assert!(Poly::parse("1/0", 2).is_err());
        assert!(Poly::parse("x1 +", 2).is_err());
        assert!(Poly::parse("x1**x2", 2).is_err());
        assert!(Poly::parse("", 2).is_err());
    }

    #[test]
    fn arithmetic_and_eval() {
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let p = &(&x + &y) * &(&x - &y);
        assert_eq!(p, Poly::parse("x1^2 - x2^2", 2).unwrap());
        assert_eq!(p.eval(&[rat(3), rat(1)]).unwrap(), rat(8));
        assert_eq!(p.derivative(0), x.scale(&rat(2)));
        assert_eq!(p.degree(), Some(2));
        assert!(p.eval(&[rat(1)]).is_err());
    }

    #[test]
    fn composition() {
        // (x1 + x2^2) with x1 -> t, x2 -> t + 1/2
        let p = Poly::parse("x1 + x2^2", 2).unwrap();
        let t = Poly::var(1, 0);
        let subs = [t.clone(), &t + &Poly::constant(1, frac(1, 2))];
        let q = p.compose(&subs).unwrap();
        assert_eq!(q, Poly::parse("x1^2 + 2*x1 + 1/4", 1).unwrap());
    }

    #[test]
    fn graded_lex_order() {
        let p = Poly::parse("x2^3 + x1*x2 + x1^2 + x1", 2).unwrap();
        assert_eq!(p.to_string(), "x2^3 + x1^2 + x1*x2 + x1");
    }
}
