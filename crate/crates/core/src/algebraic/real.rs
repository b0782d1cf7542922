use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Signed, Zero};

use super::upoly::{resultant, simplest_between, RootInterval, UPoly};
use crate::rational::{to_f64, Rational};

/// Exact real algebraic number.
///
/// Irrational values carry a square-free primitive integer polynomial and an
/// open rational interval holding exactly one of its roots, with no root at
/// either endpoint.
#[derive(Clone, Debug)]
pub enum AlgebraicReal {
    Rational(Rational),
    Root { poly: UPoly, lo: Rational, hi: Rational },
}

fn two() -> Rational {
    Rational::from_integer(2.into())
}

impl AlgebraicReal {
    pub fn rational(r: Rational) -> Self {
        AlgebraicReal::Rational(r)
    }

    /// Distinct real roots of `p`, ascending. Empty for constant `p`.
    pub fn roots_of(p: &UPoly) -> Vec<AlgebraicReal> {
        let sf = p.squarefree().primitive();
        sf.isolate_real_roots()
            .into_iter()
            .map(|r| match r {
                RootInterval::Exact(x) => AlgebraicReal::Rational(x),
                RootInterval::Open(a, b) => AlgebraicReal::from_isolated(sf.clone(), a, b),
            })
            .collect()
    }

    /// Wraps an isolating interval of a square-free polynomial, detecting rational roots.
    fn from_isolated(poly: UPoly, lo: Rational, hi: Rational) -> Self {
        let poly = poly.primitive();
        let l = poly.lc();
        let width = (&l * &l).recip();
        let mut v = AlgebraicReal::Root { poly, lo, hi };
        // distinct rationals with denominators <= l are at least 1/l^2 apart
        loop {
            let AlgebraicReal::Root { poly, lo, hi } = &v else { unreachable!() };
            let cand = simplest_between(lo, hi);
            if poly.eval(&cand).is_zero() {
                return AlgebraicReal::Rational(cand);
            }
            if hi - lo < width {
                return v;
            }
            v.refine();
        }
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            AlgebraicReal::Rational(r) => Some(r),
            AlgebraicReal::Root { .. } => None,
        }
    }

    pub fn is_rational(&self) -> bool {
        self.as_rational().is_some()
    }

    /// Closed enclosure `[lo, hi]`; a point for rationals.
    pub fn bounds(&self) -> (Rational, Rational) {
        match self {
            AlgebraicReal::Rational(r) => (r.clone(), r.clone()),
            AlgebraicReal::Root { lo, hi, .. } => (lo.clone(), hi.clone()),
        }
    }

    /// Halves the isolating interval.
    pub fn refine(&mut self) {
        if let AlgebraicReal::Root { poly, lo, hi } = self {
            let mid = (&*lo + &*hi) / two();
            let s = poly.sign_at(&mid);
            debug_assert!(s != 0, "rational root inside an irrational interval");
            if s == poly.sign_at(lo) {
                *lo = mid;
            } else {
                *hi = mid;
            }
        }
    }

    /// Refines until the interval is narrower than `eps`.
    pub fn refine_to(&mut self, eps: &Rational) {
        while let AlgebraicReal::Root { lo, hi, .. } = self {
            if &(&*hi - &*lo) < eps {
                break;
            }
            self.refine();
        }
    }

    pub fn to_f64(&self) -> f64 {
        let mut c = self.clone();
        c.refine_to(&Rational::new(1.into(), num_bigint::BigInt::one() << 60));
        let (a, b) = c.bounds();
        to_f64(&((a + b) / two()))
    }

    /// Whether this number is a root of `f`.
    pub fn is_root_of(&self, f: &UPoly) -> bool {
        match self {
            AlgebraicReal::Rational(r) => f.eval(r).is_zero(),
            AlgebraicReal::Root { poly, lo, hi } => {
                if f.is_zero() {
                    return true;
                }
                let g = poly.gcd(f);
                !g.is_constant() && g.sign_at(lo) != g.sign_at(hi)
            }
        }
    }

    fn equals(&self, other: &AlgebraicReal) -> bool {
        match (self, other) {
            (AlgebraicReal::Rational(a), AlgebraicReal::Rational(b)) => a == b,
            (AlgebraicReal::Rational(r), x) | (x, AlgebraicReal::Rational(r)) => {
                x.is_root_of(&UPoly::linear_root(r)) && matches!(x, AlgebraicReal::Rational(_))
            }
            (AlgebraicReal::Root { poly: p1, .. }, AlgebraicReal::Root { poly: p2, .. }) => {
                let g = p1.gcd(p2);
                if g.is_constant() || !self.is_root_of(&g) || !other.is_root_of(&g) {
                    return false;
                }
                let (mut a, mut b) = (self.clone(), other.clone());
                loop {
                    let (alo, ahi) = a.bounds();
                    let (blo, bhi) = b.bounds();
                    if ahi <= blo || bhi <= alo {
                        return false;
                    }
                    let lo = alo.min(blo);
                    let hi = ahi.max(bhi);
                    if g.count_roots(&lo, &hi) == 1 {
                        return true;
                    }
                    a.refine();
                    b.refine();
                }
            }
        }
    }

    /// `f(self)` as an algebraic number.
    pub fn eval_poly(&self, f: &UPoly) -> AlgebraicReal {
        let (poly, lo, hi) = match self {
            AlgebraicReal::Rational(r) => return AlgebraicReal::Rational(f.eval(r)),
            AlgebraicReal::Root { poly, lo, hi } => (poly, lo, hi),
        };
        if f.is_constant() {
            return AlgebraicReal::Rational(f.coeff(0));
        }
        // Res_s(p(s), X - f(s)) as a polynomial in X
        let p_coeffs: Vec<UPoly> = poly.coeffs().iter().map(|c| UPoly::constant(c.clone())).collect();
        let g_coeffs: Vec<UPoly> = f
            .coeffs()
            .iter()
            .enumerate()
            .map(|(k, c)| {
                if k == 0 {
                    UPoly::new(vec![-c.clone(), Rational::one()])
                } else {
                    UPoly::constant(-c.clone())
                }
            })
            .collect();
        let r = resultant(&p_coeffs, &g_coeffs).squarefree().primitive();
        let mut src = AlgebraicReal::Root {
            poly: poly.clone(),
            lo: lo.clone(),
            hi: hi.clone(),
        };
        loop {
            let (slo, shi) = src.bounds();
            let (a, b) = f.range_enclosure(&slo, &shi);
            let pad = (&b - &a) / Rational::from_integer(4.into());
            let (a, b) = (a - &pad, b + &pad);
            if !r.eval(&a).is_zero() && !r.eval(&b).is_zero() && r.count_roots(&a, &b) == 1 {
                if let Some(x) = r
                    .isolate_real_roots()
                    .into_iter()
                    .find_map(|iv| match iv {
                        RootInterval::Exact(x) if x > a && x < b => Some(x),
                        _ => None,
                    })
                {
                    return AlgebraicReal::Rational(x);
                }
                return AlgebraicReal::from_isolated(r, a, b);
            }
            src.refine();
        }
    }

}

impl PartialEq for AlgebraicReal {
    fn eq(&self, other: &Self) -> bool {
        self.equals(other)
    }
}

impl Eq for AlgebraicReal {}

impl PartialOrd for AlgebraicReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for AlgebraicReal {
    fn cmp(&self, other: &Self) -> Ordering {
        if let (AlgebraicReal::Rational(a), AlgebraicReal::Rational(b)) = (self, other) {
            return a.cmp(b);
        }
        if self.equals(other) {
            return Ordering::Equal;
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        loop {
            let (alo, ahi) = a.bounds();
            let (blo, bhi) = b.bounds();
            if ahi < blo || (ahi == blo && (alo < ahi || blo < bhi)) {
                return Ordering::Less;
            }
            if bhi < alo || (bhi == alo && (blo < bhi || alo < ahi)) {
                return Ordering::Greater;
            }
            a.refine();
            b.refine();
        }
    }
}

impl fmt::Display for AlgebraicReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraicReal::Rational(r) => write!(f, "{r}"),
            AlgebraicReal::Root { poly, lo, hi } => write!(f, "root({poly}; {lo}; {hi})"),
        }
    }
}

/// Sign of an algebraic number.
pub fn signum(x: &AlgebraicReal) -> i8 {
    match x {
        AlgebraicReal::Rational(r) => {
            if r.is_zero() {
                0
            } else if r.is_positive() {
                1
            } else {
                -1
            }
        }
        AlgebraicReal::Root { .. } => {
            let mut c = x.clone();
            loop {
                let (lo, hi) = c.bounds();
                if !lo.is_negative() {
                    return 1;
                }
                if !hi.is_positive() {
                    return -1;
                }
                c.refine();
            }
        }
    }
}
