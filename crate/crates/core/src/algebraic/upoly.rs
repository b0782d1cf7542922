use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::polyalg::Poly;
use crate::rational::Rational;

/// Dense univariate polynomial over Q, coefficients in ascending degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct UPoly(Vec<Rational>);

impl UPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UPoly(coeffs)
    }

    pub fn zero() -> Self {
        UPoly(Vec::new())
    }

    pub fn constant(c: Rational) -> Self {
        UPoly::new(vec![c])
    }

    pub fn one() -> Self {
        UPoly::constant(Rational::one())
    }

    pub fn x() -> Self {
        UPoly(vec![Rational::zero(), Rational::one()])
    }

    /// `x - r`.
    pub fn linear_root(r: &Rational) -> Self {
        UPoly(vec![-r.clone(), Rational::one()])
    }

    pub fn from_ints(c: &[i64]) -> Self {
        UPoly::new(c.iter().map(|&v| Rational::from_integer(v.into())).collect())
    }

    /// Reads a polynomial in one variable.
    pub fn from_poly(p: &Poly) -> Self {
        UPoly::new(p.univariate_coeffs())
    }

    pub fn to_poly(&self) -> Poly {
        Poly::univariate(&self.0)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.0.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.0.len() <= 1
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn lc(&self) -> Rational {
        self.0.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.0.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn sign_at(&self, x: &Rational) -> i8 {
        let v = self.eval(x);
        if v.is_zero() {
            0
        } else if v.is_positive() {
            1
        } else {
            -1
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        UPoly::new(self.0.iter().map(|a| a * c).collect())
    }

    pub fn derivative(&self) -> Self {
        UPoly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rational::from_integer(k.into()))
                .collect(),
        )
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.lc().recip();
        self.scale(&inv)
    }

    pub fn div_rem(&self, d: &UPoly) -> (UPoly, UPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let dd = d.0.len() - 1;
        if self.0.len() < d.0.len() {
            return (UPoly::zero(), self.clone());
        }
        let inv = d.lc().recip();
        let mut r = self.0.clone();
        let mut q = vec![Rational::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] * &inv;
            if !c.is_zero() {
                for (j, dj) in d.0.iter().enumerate() {
                    r[k + j] -= &c * dj;
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (UPoly::new(q), UPoly::new(r))
    }

    pub fn rem(&self, d: &UPoly) -> UPoly {
        self.div_rem(d).1
    }

    /// Quotient of an exact division.
    pub fn exact_div(&self, d: &UPoly) -> UPoly {
        let (q, r) = self.div_rem(d);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &UPoly) -> UPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// `p / gcd(p, p')`, monic.
    pub fn squarefree(&self) -> UPoly {
        if self.is_constant() {
            return if self.is_zero() { UPoly::zero() } else { UPoly::one() };
        }
        let g = self.gcd(&self.derivative());
        self.exact_div(&g).monic()
    }

    /// Scalar multiple with coprime integer coefficients and positive leading coefficient.
    pub fn primitive(&self) -> UPoly {
        if self.is_zero() {
            return UPoly::zero();
        }
        let mut l = BigInt::one();
        for c in &self.0 {
            l = l.lcm(c.denom());
        }
        let ints: Vec<BigInt> = self.0.iter().map(|c| (c * &l).to_integer()).collect();
        let mut g = BigInt::zero();
        for c in &ints {
            g = g.gcd(c);
        }
        if ints.last().is_some_and(|c| c.is_negative()) {
            g = -g;
        }
        UPoly::new(ints.into_iter().map(|c| Rational::from_integer(c / &g)).collect())
    }

    /// `p(a + b x)`.
    pub fn compose_linear(&self, a: &Rational, b: &Rational) -> UPoly {
        let lin = UPoly::new(vec![a.clone(), b.clone()]);
        let mut acc = UPoly::zero();
        for c in self.0.iter().rev() {
            acc = &(&acc * &lin) + &UPoly::constant(c.clone());
        }
        acc
    }

    /// Every real root has absolute value strictly below the returned bound.
    pub fn root_bound(&self) -> Rational {
        let lc = self.lc();
        let mut m = Rational::zero();
        for c in &self.0[..self.0.len().saturating_sub(1)] {
            let v = (c / &lc).abs();
            if v > m {
                m = v;
            }
        }
        m + Rational::one()
    }

    /// Sign changes in a coefficient sequence, zeros skipped.
    pub fn sign_variations(coeffs: &[Rational]) -> usize {
        let mut last = 0i8;
        let mut v = 0;
        for c in coeffs {
            let s = if c.is_zero() {
                continue;
            } else if c.is_positive() {
                1
            } else {
                -1
            };
            if last != 0 && s != last {
                v += 1;
            }
            last = s;
        }
        v
    }

    /// Descartes bound on the number of roots in the open interval `(a, b)`.
    pub fn descartes_bound(&self, a: &Rational, b: &Rational) -> usize {
        let n = match self.degree() {
            Some(n) => n,
            None => return 0,
        };
        let q = self.compose_linear(a, &(b - a));
        // (1+y)^n q(1/(1+y)): reverse, then shift by one
        let mut c: Vec<Rational> = (0..=n).map(|k| q.coeff(n - k)).collect();
        for i in 0..n {
            for j in (i..n).rev() {
                let t = c[j + 1].clone();
                c[j] += t;
            }
        }
        UPoly::sign_variations(&c)
    }

    /// Sturm chain `p, p', -rem(...)...`.
    pub fn sturm_chain(&self) -> Vec<UPoly> {
        let mut chain = vec![self.clone()];
        let mut b = self.derivative();
        while !b.is_zero() {
            let a = chain.last().unwrap().clone();
            chain.push(b.clone());
            b = -&a.rem(&b);
        }
        chain
    }

    /// Number of distinct real roots in `(a, b]`.
    pub fn count_roots(&self, a: &Rational, b: &Rational) -> usize {
        if self.is_zero() {
            return 0;
        }
        let chain = self.sturm_chain();
        let var = |x: &Rational| {
            let vals: Vec<Rational> = chain.iter().map(|p| p.eval(x)).collect();
            UPoly::sign_variations(&vals)
        };
        var(a).saturating_sub(var(b))
    }

    /// Isolates the distinct real roots, ascending.
    pub fn isolate_real_roots(&self) -> Vec<RootInterval> {
        if self.is_constant() {
            return Vec::new();
        }
        let p = self.squarefree();
        let bound = p.root_bound();
        let mut out = Vec::new();
        let mut stack = vec![(-bound.clone(), bound)];
        while let Some((a, b)) = stack.pop() {
            match p.descartes_bound(&a, &b) {
                0 => {}
                1 => out.push(RootInterval::Open(a, b)),
                _ => {
                    let mid = (&a + &b) / Rational::from_integer(2.into());
                    if p.eval(&mid).is_zero() {
                        out.push(RootInterval::Exact(mid.clone()));
                    }
                    stack.push((a, mid.clone()));
                    stack.push((mid, b));
                }
            }
        }
        out.sort_by(|x, y| x.lo().cmp(y.lo()));
        out
    }

    /// Interval enclosure of the range of the polynomial over `[lo, hi]`.
    pub fn range_enclosure(&self, lo: &Rational, hi: &Rational) -> (Rational, Rational) {
        let mut a = Rational::zero();
        let mut b = Rational::zero();
        for (k, c) in self.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (pl, ph) = interval_pow(lo, hi, k as u32);
            let (x, y) = (c * &pl, c * &ph);
            if x <= y {
                a += x;
                b += y;
            } else {
                a += y;
                b += x;
            }
        }
        (a, b)
    }
}

fn interval_pow(lo: &Rational, hi: &Rational, k: u32) -> (Rational, Rational) {
    if k == 0 {
        return (Rational::one(), Rational::one());
    }
    let pl = num_traits::pow(lo.clone(), k as usize);
    let ph = num_traits::pow(hi.clone(), k as usize);
    if k.is_multiple_of(2) && lo.is_negative() && hi.is_positive() {
        (Rational::zero(), pl.max(ph))
    } else if pl <= ph {
        (pl, ph)
    } else {
        (ph, pl)
    }
}

/// Output of root isolation: an exact rational root or an open interval
/// holding exactly one root and no root at its endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RootInterval {
    Exact(Rational),
    Open(Rational, Rational),
}

impl RootInterval {
    pub fn lo(&self) -> &Rational {
        match self {
            RootInterval::Exact(r) => r,
            RootInterval::Open(a, _) => a,
        }
    }
}

impl Add for &UPoly {
    type Output = UPoly;
    fn add(self, rhs: &UPoly) -> UPoly {
        let n = self.0.len().max(rhs.0.len());
        UPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &UPoly {
    type Output = UPoly;
    fn sub(self, rhs: &UPoly) -> UPoly {
        let n = self.0.len().max(rhs.0.len());
        UPoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &UPoly {
    type Output = UPoly;
    fn mul(self, rhs: &UPoly) -> UPoly {
        if self.is_zero() || rhs.is_zero() {
            return UPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UPoly::new(out)
    }
}

impl Neg for &UPoly {
    type Output = UPoly;
    fn neg(self) -> UPoly {
        UPoly(self.0.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly())
    }
}

/// Determinant of a square matrix over Q[x] by fraction-free elimination.
pub fn det_over_upoly(mut m: Vec<Vec<UPoly>>) -> UPoly {
    let n = m.len();
    if n == 0 {
        return UPoly::one();
    }
    let mut negate = false;
    let mut prev = UPoly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    negate = !negate;
                }
                None => return UPoly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = v.exact_div(&prev);
            }
            m[i][k] = UPoly::zero();
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        -&d
    } else {
        d
    }
}

/// Resultant in `y` of `f = sum f_k y^k` and `g = sum g_k y^k` with
/// coefficients in Q[x]. Both must be nonzero.
pub fn resultant(f: &[UPoly], g: &[UPoly]) -> UPoly {
    let trim = |v: &[UPoly]| {
        let mut v = v.to_vec();
        while v.last().is_some_and(UPoly::is_zero) {
            v.pop();
        }
        v
    };
    let (f, g) = (trim(f), trim(g));
    assert!(!f.is_empty() && !g.is_empty(), "resultant of zero polynomial");
    let (m, n) = (f.len() - 1, g.len() - 1);
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for r in 0..n {
        let mut row = vec![UPoly::zero(); size];
        for (k, c) in f.iter().enumerate() {
            row[r + m - k] = c.clone();
        }
        rows.push(row);
    }
    for r in 0..m {
        let mut row = vec![UPoly::zero(); size];
        for (k, c) in g.iter().enumerate() {
            row[r + n - k] = c.clone();
        }
        rows.push(row);
    }
    det_over_upoly(rows)
}

/// Coefficients of a two-variable polynomial in variable `var`, each a
/// polynomial in the other variable.
pub fn coeffs_in(p: &Poly, var: usize) -> Vec<UPoly> {
    assert_eq!(p.nvars(), 2);
    let other = 1 - var;
    let deg = p.degree_in(var) as usize;
    let mut out = vec![Vec::<Rational>::new(); deg + 1];
    for (m, c) in p.terms() {
        let (e, o) = (m.exps()[var] as usize, m.exps()[other] as usize);
        let v = &mut out[e];
        if v.len() <= o {
            v.resize(o + 1, Rational::zero());
        }
        v[o] += c;
    }
    out.into_iter().map(UPoly::new).collect()
}

/// The simplest rational (least denominator, then least magnitude) in the open interval `(lo, hi)`.
pub fn simplest_between(lo: &Rational, hi: &Rational) -> Rational {
    assert!(lo < hi);
    if lo.is_negative() && hi.is_positive() {
        return Rational::zero();
    }
    if !hi.is_positive() {
        return -simplest_between(&-hi, &-lo);
    }
    simplest_nonneg(lo.clone(), Some(hi.clone()))
}

fn simplest_nonneg(lo: Rational, hi: Option<Rational>) -> Rational {
    let n = lo.floor();
    let next = &n + Rational::one();
    if hi.as_ref().is_none_or(|h| &next < h) {
        return next;
    }
    let hi = hi.unwrap();
    // (lo, hi) lies in [n, n + 1]
    let new_lo = (&hi - &n).recip();
    let new_hi = if lo == n { None } else { Some((&lo - &n).recip()) };
    n + simplest_nonneg(new_lo, new_hi).recip()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, rat};

    #[test]
    fn gcd_and_squarefree() {
        let a = UPoly::from_ints(&[-1, 0, 1]); // x^2 - 1
        let b = UPoly::from_ints(&[1, 2, 1]); // (x + 1)^2
        assert_eq!(a.gcd(&b), UPoly::from_ints(&[1, 1]));
        let c = &(&b * &b) * &UPoly::from_ints(&[-2, 1]);
        assert_eq!(c.squarefree(), &UPoly::from_ints(&[1, 1]) * &UPoly::from_ints(&[-2, 1]));
        assert_eq!(UPoly::from_ints(&[2, 4]).primitive(), UPoly::from_ints(&[1, 2]));
        assert_eq!(UPoly::new(vec![frac(-1, 2), frac(-1, 3)]).primitive(), UPoly::from_ints(&[3, 2]));
    }

    #[test]
    fn sturm_counts() {
        let p = UPoly::from_ints(&[0, -2, 0, 1]); // x^3 - 2x
        assert_eq!(p.count_roots(&rat(-10), &rat(10)), 3);
        assert_eq!(p.count_roots(&rat(0), &rat(10)), 1);
        assert_eq!(p.count_roots(&rat(-1), &rat(0)), 1);
    }

    #[test]
    fn isolation() {
        let p = UPoly::from_ints(&[0, -2, 0, 1]);
        let roots = p.isolate_real_roots();
        assert_eq!(roots.len(), 3);
        assert!(roots.contains(&RootInterval::Exact(rat(0))));
        let q = UPoly::from_ints(&[1, 0, 1]);
        assert!(q.isolate_real_roots().is_empty());
        // (x - 1)(x - 1/3)(x + 7)
        let r = &(&UPoly::from_ints(&[-1, 1]) * &UPoly::from_ints(&[-1, 3])) * &UPoly::from_ints(&[7, 1]);
        assert_eq!(r.isolate_real_roots().len(), 3);
    }

    #[test]
    fn resultant_eliminates() {
        // f = y - x, g = y^2 - 2 in y: Res = x^2 - 2
        let f = vec![-&UPoly::x(), UPoly::one()];
        let g = vec![UPoly::from_ints(&[-2]), UPoly::zero(), UPoly::one()];
        let r = resultant(&f, &g);
        assert_eq!(r.monic(), UPoly::from_ints(&[-2, 0, 1]));
        // constant in y
        let c = vec![UPoly::from_ints(&[3])];
        assert_eq!(resultant(&c, &g), UPoly::from_ints(&[9]));
    }

    #[test]
    fn simplest_rationals() {
        assert_eq!(simplest_between(&frac(1, 3), &frac(2, 3)), frac(1, 2));
        assert_eq!(simplest_between(&frac(-1, 2), &frac(1, 2)), rat(0));
        assert_eq!(simplest_between(&frac(31, 10), &frac(32, 10)), frac(19, 6));
        assert_eq!(simplest_between(&frac(-32, 10), &frac(-31, 10)), frac(-19, 6));
        assert_eq!(simplest_between(&rat(2), &frac(5, 2)), frac(7, 3));
        assert_eq!(simplest_between(&rat(2), &rat(4)), rat(3));
    }

    #[test]
    fn enclosure_contains_values() {
        let p = UPoly::from_ints(&[1, -3, 0, 2]);
        let (a, b) = p.range_enclosure(&frac(-1, 2), &rat(1));
        for k in 0..=6 {
            let x = frac(-1, 2) + frac(k, 4);
            let v = p.eval(&x);
            assert!(a <= v && v <= b);
        }
    }
}
