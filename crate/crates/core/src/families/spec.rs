use std::path::PathBuf;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebraic::UPoly;
use crate::error::{Error, Result};
use crate::flows::{load_family, Curve};
use crate::models;
use crate::polyalg::VectorField;
use crate::rational::{parse_rational, rat, Rational};

/// Inclusive integer range `[lo, hi]`.
pub type Span = [i64; 2];

/// A family of curves, read from TOML with a `kind` key.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilySpec {
    #[serde(flatten)]
    pub kind: FamilyKind,
    /// Seed for `sample` and randomized kinds.
    #[serde(default)]
    pub seed: u64,
    /// Keep a seeded random subset of this many curves, in generation order.
    #[serde(default)]
    pub sample: Option<usize>,
    /// Added to every generated id.
    #[serde(default)]
    pub id_offset: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FamilyKind {
    /// X-flows through `(0, u, v)`; under `pi_X` they are the points `(u, v)`.
    HeisenbergX { u: Span, v: Span },
    /// Y-flows through `(a, 0, b)`; under `pi_X` they are the lines `v = a u + b`.
    HeisenbergY { slope: Span, intercept: Span },
    /// `X_omega` flows, `omega = (m, 1)`, through every integer base point in the box.
    HeisenbergOmega { slopes: Vec<String>, x: Span, y: Span, t: Span },
    /// Lines in the plane `t = 0`: `n` integral curves of `X + (y0/2) T` and `n` of `Y - (x0/2) T`.
    HeisenbergPlanar { n: u32 },
    /// `u -> (u, a + b u + c u^2)` over `[0, n^3] x [0, n^2] x [0, n]`.
    ParabolaGrid { n: u32 },
    /// Translates `u -> y0 - gamma(u)` for `y0` in `grid^d`; `lifted` gives the `X_2` flows in `R^(d+1)`.
    MomentTranslates {
        d: usize,
        grid: Span,
        #[serde(default)]
        lifted: bool,
    },
    /// Flows of `X_generator` of the X-ray lift through every point of `grid^n`.
    Xray { n: usize, generator: usize, grid: Span },
    /// Lines parallel to each axis through `{0..k-1}^n`.
    AxisParallel { n: usize, k: u32 },
    /// One-point curves at the integer points of a planar box.
    PointGrid { u: Span, v: Span },
    /// Random lines `p + s v` with `p` in `[0, coord_max]^n` and `v` in `{-1, 0, 1}^n`.
    RandomLines { n: usize, count: usize, coord_max: i64 },
    CustomFile { path: PathBuf },
}

impl FamilySpec {
    pub fn new(kind: FamilyKind) -> Self {
        FamilySpec {
            kind,
            seed: 0,
            sample: None,
            id_offset: 0,
        }
    }

    pub fn parse_toml(s: &str) -> Result<Self> {
        let spec: FamilySpec = toml::from_str(s).map_err(|e| Error::InvalidParameter(format!("family spec: {e}")))?;
        spec.validate()?;
        Ok(spec)
    }

    /// Short text form `kind:key=value,...`, e.g. `parabola_grid:n=3`.
    pub fn parse_flag(s: &str) -> Result<Self> {
        let (kind, rest) = s.split_once(':').unwrap_or((s, ""));
        let mut doc = format!("kind = \"{}\"\n", kind.trim());
        for kv in split_top_level(rest) {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| Error::InvalidParameter(format!("family flag entry without '=': {kv:?}")))?;
            doc.push_str(&format!("{} = {}\n", k.trim(), v.trim()));
        }
        FamilySpec::parse_toml(&doc)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidParameter(m.to_string()));
        let span_ok = |s: &Span| s[0] <= s[1];
        match &self.kind {
            FamilyKind::HeisenbergX { u, v } | FamilyKind::PointGrid { u, v } => {
                if !span_ok(u) || !span_ok(v) {
                    return bad("empty range");
                }
            }
            FamilyKind::HeisenbergY { slope, intercept } => {
                if !span_ok(slope) || !span_ok(intercept) {
                    return bad("empty range");
                }
            }
            FamilyKind::HeisenbergOmega { slopes, x, y, t } => {
                if slopes.is_empty() || ![x, y, t].iter().all(|s| span_ok(s)) {
                    return bad("heisenberg_omega needs slopes and nonempty ranges");
                }
                for s in slopes {
                    parse_rational(s)?;
                }
            }
            FamilyKind::HeisenbergPlanar { n } | FamilyKind::ParabolaGrid { n } => {
                if *n < 1 {
                    return bad("n must be at least 1");
                }
            }
            FamilyKind::MomentTranslates { d, grid, .. } => {
                if *d < 2 || !span_ok(grid) {
                    return bad("moment_translates needs d >= 2 and a nonempty grid");
                }
            }
            FamilyKind::Xray { n, generator, grid } => {
                if *n < 3 || !(1..=2).contains(generator) || !span_ok(grid) {
                    return bad("xray needs n >= 3, generator 1 or 2, nonempty grid");
                }
            }
            FamilyKind::AxisParallel { n, k } => {
                if *n < 2 || *k < 1 {
                    return bad("axis_parallel needs n >= 2 and k >= 1");
                }
            }
            FamilyKind::RandomLines { n, coord_max, .. } => {
                if *n < 2 || *coord_max < 0 {
                    return bad("random_lines needs n >= 2 and coord_max >= 0");
                }
            }
            FamilyKind::CustomFile { .. } => {}
        }
        Ok(())
    }

    /// Closed-form curve count for grid kinds, before sampling.
    pub fn expected_count(&self) -> Option<u64> {
        let len = |s: &Span| (s[1] - s[0] + 1) as u64;
        Some(match &self.kind {
            FamilyKind::HeisenbergX { u, v } | FamilyKind::PointGrid { u, v } => len(u) * len(v),
            FamilyKind::HeisenbergY { slope, intercept } => len(slope) * len(intercept),
            FamilyKind::HeisenbergOmega { slopes, x, y, t } => slopes.len() as u64 * len(x) * len(y) * len(t),
            FamilyKind::HeisenbergPlanar { n } => 2 * *n as u64,
            FamilyKind::ParabolaGrid { n } => {
                let n = *n as u64;
                (n.pow(3) + 1) * (n.pow(2) + 1) * (n + 1)
            }
            FamilyKind::MomentTranslates { d, grid, .. } => len(grid).pow(*d as u32),
            FamilyKind::Xray { n, grid, .. } => len(grid).pow(*n as u32),
            FamilyKind::AxisParallel { n, k } => *n as u64 * (*k as u64).pow(*n as u32 - 1),
            FamilyKind::RandomLines { count, .. } => *count as u64,
            FamilyKind::CustomFile { .. } => return None,
        })
    }
}

fn split_top_level(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, ch) in s.char_indices() {
        match ch {
            '[' => depth += 1,
            ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    if !s[start..].trim().is_empty() {
        out.push(&s[start..]);
    }
    out.into_iter().filter(|p| !p.trim().is_empty()).collect()
}

fn range(s: &Span) -> impl Iterator<Item = i64> + Clone {
    s[0]..=s[1]
}

fn cube(s: &Span, d: usize) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..d {
        out = out
            .into_iter()
            .flat_map(|p| {
                range(s).map(move |v| {
                    let mut q = p.clone();
                    q.push(v);
                    q
                })
            })
            .collect();
    }
    out
}

fn rv(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| rat(x)).collect()
}

/// Generates the family; deterministic for a fixed spec.
pub fn generate(spec: &FamilySpec) -> Result<Vec<Curve>> {
    spec.validate()?;
    let mut curves = generate_kind(spec)?;
    if let Some(k) = spec.sample {
        if k < curves.len() {
            let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
            let mut idx = sample(&mut rng, curves.len(), k).into_vec();
            idx.sort_unstable();
            curves = idx.into_iter().map(|i| curves[i].clone()).collect();
        }
    }
    for c in &mut curves {
        c.id += spec.id_offset;
    }
    Ok(curves)
}

fn generate_kind(spec: &FamilySpec) -> Result<Vec<Curve>> {
    let mut out = Vec::new();
    let mut next = 0u64;
    let mut id = || {
        next += 1;
        next - 1
    };
    match &spec.kind {
        FamilyKind::HeisenbergX { u, v } => {
            let basis = models::heisenberg_basis();
            for a in range(u) {
                for b in range(v) {
                    out.push(Curve::from_flow(id(), "heisenberg_x", &basis, rv(&[1, 0, 0]), rv(&[0, a, b]))?);
                }
            }
        }
        FamilyKind::HeisenbergY { slope, intercept } => {
            let basis = models::heisenberg_basis();
            for a in range(slope) {
                for b in range(intercept) {
                    out.push(Curve::from_flow(id(), "heisenberg_y", &basis, rv(&[0, 1, 0]), rv(&[a, 0, b]))?);
                }
            }
        }
        FamilyKind::HeisenbergOmega { slopes, x, y, t } => {
            let basis = models::heisenberg_basis();
            for s in slopes {
                let m = parse_rational(s)?;
                for a in range(x) {
                    for b in range(y) {
                        for c in range(t) {
                            let coords = vec![m.clone(), rat(1), rat(0)];
                            out.push(Curve::from_flow(id(), "heisenberg_omega", &basis, coords, rv(&[a, b, c]))?);
                        }
                    }
                }
            }
        }
        FamilyKind::HeisenbergPlanar { n } => {
            let basis = models::heisenberg_basis();
            let half = |v: i64| Rational::new(v.into(), 2.into());
            for y0 in 0..*n as i64 {
                out.push(Curve::from_flow(id(), "heisenberg_planar_x", &basis, vec![rat(1), rat(0), half(y0)], rv(&[0, y0, 0]))?);
            }
            for x0 in 0..*n as i64 {
                out.push(Curve::from_flow(id(), "heisenberg_planar_y", &basis, vec![rat(0), rat(1), half(-x0)], rv(&[x0, 0, 0]))?);
            }
        }
        FamilyKind::ParabolaGrid { n } => {
            let n = *n as i64;
            for a in 0..=n.pow(3) {
                for b in 0..=n.pow(2) {
                    for c in 0..=n {
                        out.push(parabola(id(), a, b, c));
                    }
                }
            }
        }
        FamilyKind::MomentTranslates { d, grid, lifted } => {
            let sys = models::moment_lift(*d)?;
            for y0 in cube(grid, *d) {
                if *lifted {
                    let mut base = rv(&y0);
                    base.push(rat(0));
                    out.push(Curve::from_flow(id(), "moment_lifted", &sys.fields, rv(&[0, 1]), base)?);
                } else {
                    let param = (0..*d)
                        .map(|i| {
                            let mut c = vec![rat(y0[i])];
                            c.resize(i + 1, rat(0));
                            c.push(rat(-1));
                            UPoly::new(c)
                        })
                        .collect();
                    out.push(Curve::new(id(), "moment_translates", param, rv(&y0), None)?);
                }
            }
        }
        FamilyKind::Xray { n, generator, grid } => {
            let sys = models::xray(*n)?;
            let coords = if *generator == 1 { rv(&[1, 0]) } else { rv(&[0, 1]) };
            for p in cube(grid, *n) {
                out.push(Curve::from_flow(id(), format!("xray_x{generator}"), &sys.fields, coords.clone(), rv(&p))?);
            }
        }
        FamilyKind::AxisParallel { n, k } => {
            let sys = models::loomis_whitney(*n)?;
            let grid = cube(&[0, *k as i64 - 1], *n - 1);
            for axis in 0..*n {
                let mut coords = vec![rat(0); *n];
                coords[axis] = rat(1);
                for rest in &grid {
                    let mut p = rest.clone();
                    p.insert(axis, 0);
                    out.push(Curve::from_flow(id(), format!("axis{}", axis + 1), &sys.fields, coords.clone(), rv(&p))?);
                }
            }
        }
        FamilyKind::PointGrid { u, v } => {
            for a in range(u) {
                for b in range(v) {
                    out.push(Curve::singleton(id(), "point_grid", rv(&[a, b])));
                }
            }
        }
        FamilyKind::RandomLines { n, count, coord_max } => {
            let basis: Vec<VectorField> = (0..*n).map(|i| VectorField::coordinate(*n, i)).collect();
            let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
            while out.len() < *count {
                let p: Vec<i64> = (0..*n).map(|_| rng.gen_range(0..=*coord_max)).collect();
                let v: Vec<i64> = (0..*n).map(|_| rng.gen_range(-1..=1)).collect();
                if v.iter().all(|&x| x == 0) {
                    continue;
                }
                out.push(Curve::from_flow(id(), "random_lines", &basis, rv(&v), rv(&p))?);
            }
        }
        FamilyKind::CustomFile { path } => return load_family(path),
    }
    Ok(out)
}

/// `u -> (u, a + b u + c u^2)`.
pub fn parabola(id: u64, a: i64, b: i64, c: i64) -> Curve {
    Curve::new(
        id,
        "parabola_grid",
        vec![UPoly::x(), UPoly::from_ints(&[a, b, c])],
        rv(&[0, a]),
        None,
    )
    .expect("parabola base point matches")
}
