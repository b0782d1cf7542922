use rayon::prelude::*;

use super::intersect::tangent_pair;
use super::sets::run_with_workers;
use crate::error::{Error, Result};
use crate::families::{generate, FamilyKind, FamilySpec};
use crate::rational::exact_sqrt_u128;

/// `(N^3 + 1)(N^2 + 1)(N + 1)`, the parabola grid size.
pub fn parabola_grid_size(n: u64) -> u64 {
    (n.pow(3) + 1) * (n.pow(2) + 1) * (n + 1)
}

/// Unordered tangent pairs in the parabola grid, by counting the grid
/// pairs realizing each difference `(da, db, dc)` with `4 da dc = db^2`, `dc != 0`.
pub fn count_tangent_pairs(n: u64) -> Result<u128> {
    if n == 0 {
        return Err(Error::InvalidParameter("N must be at least 1".into()));
    }
    let (amax, bmax, cmax) = (n.pow(3) as i128, n.pow(2) as i128, n as i128);
    let mut ordered: u128 = 0;
    for dc in -cmax..=cmax {
        if dc == 0 {
            continue;
        }
        for da in -amax..=amax {
            let q = 4 * da * dc;
            if q < 0 {
                continue;
            }
            let Some(db) = exact_sqrt_u128(q as u128) else { continue };
            let db = db as i128;
            if db > bmax {
                continue;
            }
            let realized = ((amax + 1 - da.abs()) * (cmax + 1 - dc.abs())) as u128;
            let signs = if db == 0 { 1 } else { 2 };
            ordered += signs * realized * (bmax + 1 - db) as u128;
        }
    }
    Ok(ordered / 2)
}

/// Tangent pairs in the parabola grid by testing every pair for a real double root.
pub fn tangent_pairs_bruteforce(n: u32, workers: usize) -> Result<u64> {
    let curves = generate(&FamilySpec::new(FamilyKind::ParabolaGrid { n }))?;
    let counts = run_with_workers(workers, || {
        (0..curves.len())
            .into_par_iter()
            .map(|i| -> Result<u64> {
                let mut k = 0;
                for j in i + 1..curves.len() {
                    if tangent_pair(&curves[i], &curves[j])? {
                        k += 1;
                    }
                }
                Ok(k)
            })
            .collect::<Vec<_>>()
    })?;
    counts.into_iter().sum()
}

/// Incidences between the points `[0, N] x [0, 3N^3]` and the parabola grid,
/// by integer membership of `(u, a + b u + c u^2)` for each parabola and `u`.
pub fn n7_grid_incidences(n: u64) -> u64 {
    let vmax = 3 * n.pow(3);
    let mut total = 0u64;
    for a in 0..=n.pow(3) {
        for b in 0..=n.pow(2) {
            for c in 0..=n {
                for u in 0..=n {
                    if a + b * u + c * u * u <= vmax {
                        total += 1;
                    }
                }
            }
        }
    }
    total
}

/// `(N^3 + 1)(N^2 + 1)(N + 1)^2`.
pub fn n7_grid_formula(n: u64) -> u64 {
    parabola_grid_size(n) * (n + 1)
}
