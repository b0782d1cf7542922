use std::collections::HashMap;
use std::sync::OnceLock;

use num_traits::{One, Zero};

use super::algebra::{NilpotentAlgebra, MAX_STEP};
use crate::error::{Error, Result};
use crate::polyalg::Poly;
use crate::rational::Rational;

/// Words over {X = 0, Y = 1} with their Dynkin coefficients, right-nested
/// brackets, up to length [`MAX_STEP`]. Words whose bracket vanishes identically
/// (repeated last letter) are omitted.
fn dynkin_table() -> &'static Vec<(Vec<u8>, Rational)> {
    static TABLE: OnceLock<Vec<(Vec<u8>, Rational)>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut acc: HashMap<Vec<u8>, Rational> = HashMap::new();
        let fact = |k: usize| -> Rational { Rational::from_integer((1..=k as i64).product::<i64>().into()) };
        // sequences of n pairs (r_i, s_i) != (0, 0) with total length <= MAX_STEP
        fn rec(
            pairs: &mut Vec<(usize, usize)>,
            left: usize,
            n: usize,
            out: &mut Vec<Vec<(usize, usize)>>,
        ) {
            if pairs.len() == n {
                out.push(pairs.clone());
                return;
            }
            for r in 0..=left {
                for s in 0..=left - r {
                    if r + s == 0 {
                        continue;
                    }
                    pairs.push((r, s));
                    rec(pairs, left - r - s, n, out);
                    pairs.pop();
                }
            }
        }
        for n in 1..=MAX_STEP {
            let mut seqs = Vec::new();
            rec(&mut Vec::new(), MAX_STEP, n, &mut seqs);
            let sign = if n % 2 == 1 { Rational::one() } else { -Rational::one() };
            for seq in seqs {
                let mut word = Vec::new();
                let mut denom = Rational::one();
                for &(r, s) in &seq {
                    word.extend(std::iter::repeat_n(0u8, r));
                    word.extend(std::iter::repeat_n(1u8, s));
                    denom *= fact(r) * fact(s);
                }
                let m = word.len();
                if m >= 2 && word[m - 1] == word[m - 2] {
                    continue;
                }
                denom *= Rational::from_integer((n * m).into());
                *acc.entry(word).or_insert_with(Rational::zero) += &sign / denom;
            }
        }
        let mut v: Vec<(Vec<u8>, Rational)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        v.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)));
        v
    })
}

fn check_step(a: &NilpotentAlgebra) -> Result<()> {
    if a.step() > MAX_STEP {
        return Err(Error::InvalidParameter(format!(
            "BCH series supported up to step {MAX_STEP}, algebra declares step {}",
            a.step()
        )));
    }
    Ok(())
}

/// `log(exp(u) exp(v))` for vectors with polynomial coordinates.
pub fn bch_poly(a: &NilpotentAlgebra, u: &[Poly], v: &[Poly]) -> Result<Vec<Poly>> {
    check_step(a)?;
    let nvars = u.first().or(v.first()).map_or(0, Poly::nvars);
    let mut memo: HashMap<&[u8], Vec<Poly>> = HashMap::new();
    let mut out = vec![Poly::zero(nvars); a.dim()];
    for (word, c) in dynkin_table() {
        if word.len() > a.step() {
            break;
        }
        let val = nested(a, word, u, v, &mut memo);
        for (o, x) in out.iter_mut().zip(&val) {
            if !x.is_zero() {
                *o = &*o + &x.scale(c);
            }
        }
    }
    Ok(out)
}

fn nested<'w>(a: &NilpotentAlgebra, word: &'w [u8], u: &[Poly], v: &[Poly], memo: &mut HashMap<&'w [u8], Vec<Poly>>) -> Vec<Poly> {
    let letter = |l: u8| if l == 0 { u.to_vec() } else { v.to_vec() };
    if word.len() == 1 {
        return letter(word[0]);
    }
    if let Some(x) = memo.get(word) {
        return x.clone();
    }
    let tail = nested(a, &word[1..], u, v, memo);
    let val = if tail.iter().all(Poly::is_zero) {
        tail
    } else {
        a.bracket_poly(&letter(word[0]), &tail)
    };
    memo.insert(word, val.clone());
    val
}

/// Group law in exponential coordinates of the first kind.
pub fn bch_product(a: &NilpotentAlgebra, u: &[Rational], v: &[Rational]) -> Result<Vec<Rational>> {
    for w in [u, v] {
        if w.len() != a.dim() {
            return Err(Error::DimensionMismatch {
                expected: a.dim(),
                got: w.len(),
            });
        }
    }
    let lift = |w: &[Rational]| -> Vec<Poly> { w.iter().map(|x| Poly::constant(0, x.clone())).collect() };
    Ok(bch_poly(a, &lift(u), &lift(v))?.iter().map(Poly::constant_term).collect())
}
