//! Experiment drivers behind the command-line tool: each command builds one
//! construction, counts it exactly and emits CSV/JSON tables.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::families::{count_square_triples, generate, FamilySpec};
use crate::flows::{curve_to_line, exp_flow, Curve, ProjectionMap};
use crate::hp::HpDecimal;
use crate::incidence::{
    bound_report, count_tangent_pairs, detect_joints, incidence_set, multijoint_sum, n7_grid_formula,
    n7_grid_incidences, parabola_grid_size, BoundCounts, IncidenceOptions, CSV_HEADER,
};
use crate::liealg::{bracket_sign, check_algebra, pushforward_fields, weak_malcev_basis, NilpotentAlgebra};
use crate::models;
use crate::partition::{partition_points, CutOptions, WeightedPoints};
use crate::rational::{parse_rational, Rational};

pub const MIN_DIGITS: u32 = 15;
pub const DEFAULT_DIGITS: u32 = 30;
pub const TANGENT_SCAN_CAP: u64 = 40;
pub const N7_GRID_CAP: u64 = 16;
pub const SQUARE_SIEVE_CAP: u64 = 100;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Gen,
    Incidences,
    Joints,
    TangentScan,
    N7Grid,
    SquareSieve,
    Partition,
    Bounds,
    LiftDemo,
    Fit,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Gen => "gen",
            Command::Incidences => "incidences",
            Command::Joints => "joints",
            Command::TangentScan => "tangent-scan",
            Command::N7Grid => "n7-grid",
            Command::SquareSieve => "square-sieve",
            Command::Partition => "partition",
            Command::Bounds => "bounds",
            Command::LiftDemo => "lift-demo",
            Command::Fit => "fit",
        }
    }
}

fn default_digits() -> u32 {
    DEFAULT_DIGITS
}

fn default_workers() -> usize {
    1
}

/// Everything one run needs; also the schema of `--config` files.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub command: Command,
    #[serde(default)]
    pub families: Vec<FamilySpec>,
    /// Scale values (`N` or `k`), strictly increasing.
    #[serde(default)]
    pub scale: Vec<u64>,
    #[serde(default = "default_digits")]
    pub digits: u32,
    #[serde(default = "default_workers")]
    pub workers: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub out: Option<PathBuf>,
    /// `system:projection`, e.g. `heisenberg:piX`.
    #[serde(default)]
    pub projection: Option<String>,
    #[serde(default)]
    pub v_dim: Option<usize>,
    #[serde(default)]
    pub rounds: Option<u32>,
    /// Whitespace-separated rational coordinates per line, optional `; weight`.
    #[serde(default)]
    pub points: Option<PathBuf>,
    #[serde(default)]
    pub random_points: Option<usize>,
    #[serde(default)]
    pub coord_max: Option<i64>,
    #[serde(default)]
    pub counts: Option<BoundCounts>,
    /// Built-in name (`heisenberg`, `free2-step2`, `free2-step3`, `abelian3`) or a file.
    #[serde(default)]
    pub algebra: Option<String>,
    /// `(x, y)` pairs for `fit`.
    #[serde(default)]
    pub series: Vec<(f64, f64)>,
}

impl ExperimentConfig {
    pub fn new(command: Command) -> Self {
        ExperimentConfig {
            command,
            families: Vec::new(),
            scale: Vec::new(),
            digits: DEFAULT_DIGITS,
            workers: 1,
            seed: 0,
            out: None,
            projection: None,
            v_dim: None,
            rounds: None,
            points: None,
            random_points: None,
            coord_max: None,
            counts: None,
            algebra: None,
            series: Vec::new(),
        }
    }

    pub fn parse_toml(s: &str) -> Result<Self> {
        toml::from_str(s).map_err(|e| Error::InvalidParameter(format!("config: {e}")))
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidParameter(m));
        if self.digits < MIN_DIGITS {
            return bad(format!("precision must be at least {MIN_DIGITS} digits, got {}", self.digits));
        }
        if self.scale.windows(2).any(|w| w[0] >= w[1]) {
            return bad("scale values must be strictly increasing".into());
        }
        let cap = match self.command {
            Command::TangentScan => Some(TANGENT_SCAN_CAP),
            Command::N7Grid => Some(N7_GRID_CAP),
            Command::SquareSieve => Some(SQUARE_SIEVE_CAP),
            _ => None,
        };
        if let Some(cap) = cap {
            if self.scale.is_empty() {
                return bad(format!("{} needs a non-empty scale list", self.command.name()));
            }
            if self.scale[0] == 0 {
                return bad("scale values must be positive".into());
            }
            if let Some(&n) = self.scale.last().filter(|&&n| n > cap) {
                return Err(Error::ScaleCapExceeded(format!("{} supports N <= {cap}, got {n}", self.command.name())));
            }
        }
        for f in &self.families {
            f.validate()?;
        }
        Ok(())
    }
}

/// A rectangular table of exact strings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut s = self.header.join(",");
        s.push('\n');
        for r in &self.rows {
            s.push_str(&r.join(","));
            s.push('\n');
        }
        s
    }

    /// Array of objects keyed by column name.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.rows
                .iter()
                .map(|r| {
                    Value::Object(
                        self.header
                            .iter()
                            .cloned()
                            .zip(r.iter().map(|v| Value::String(v.clone())))
                            .collect(),
                    )
                })
                .collect(),
        )
    }
}

/// Files produced by a run, plus a short human summary.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub files: Vec<(String, String)>,
    pub summary: String,
}

impl Report {
    fn table(name: &str, t: &Table, summary: String) -> Self {
        Report {
            files: vec![
                (format!("{name}.csv"), t.to_csv()),
                (format!("{name}.json"), pretty(&t.to_json())),
            ],
            summary,
        }
    }

    /// Writes every file into `dir`; files are staged first so a failure
    /// leaves no partial output.
    pub fn write(&self, dir: &Path) -> Result<()> {
        fs::create_dir_all(dir)?;
        let mut staged = Vec::new();
        for (name, body) in &self.files {
            let tmp = dir.join(format!(".{name}.tmp"));
            if let Err(e) = fs::write(&tmp, body) {
                for (t, _) in &staged {
                    let _ = fs::remove_file(t);
                }
                return Err(e.into());
            }
            staged.push((tmp, dir.join(name)));
        }
        for (tmp, dest) in staged {
            fs::rename(tmp, dest)?;
        }
        Ok(())
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

fn int(v: u128, digits: u32) -> HpDecimal {
    HpDecimal::from_integer(v, digits)
}

/// `num / base^(p/q)`.
fn ratio_pow(num: u128, base: u128, p: u32, q: u32, digits: u32) -> String {
    let den = HpDecimal::pow_ratio(&Rational::from_integer(base.into()), p, q, digits + 10);
    if den.is_zero() {
        return "na".into();
    }
    int(num, digits + 10).div(&den).truncate(digits).to_string()
}

pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Report> {
    cfg.validate()?;
    match cfg.command {
        Command::Gen => gen(cfg),
        Command::Incidences => incidences(cfg),
        Command::Joints => joints(cfg),
        Command::TangentScan => tangent_scan(cfg),
        Command::N7Grid => n7_grid(cfg),
        Command::SquareSieve => square_sieve(cfg),
        Command::Partition => partition(cfg),
        Command::Bounds => bounds(cfg),
        Command::LiftDemo => lift_demo(cfg),
        Command::Fit => fit(cfg),
    }
}

fn need_families(cfg: &ExperimentConfig, n: std::ops::RangeInclusive<usize>) -> Result<Vec<Vec<Curve>>> {
    if !n.contains(&cfg.families.len()) {
        return Err(Error::InvalidParameter(format!(
            "{} takes {}..={} families, got {}",
            cfg.command.name(),
            n.start(),
            n.end(),
            cfg.families.len()
        )));
    }
    cfg.families.iter().map(generate).collect()
}

fn gen(cfg: &ExperimentConfig) -> Result<Report> {
    let fams = need_families(cfg, 1..=usize::MAX)?;
    let mut body = String::new();
    for c in fams.iter().flatten() {
        body.push_str(&curve_to_line(c));
        body.push('\n');
    }
    let counts: Vec<String> = fams.iter().map(|f| f.len().to_string()).collect();
    Ok(Report {
        files: vec![("curves.jsonl".into(), body)],
        summary: format!("curves: {}", counts.join(" + ")),
    })
}

pub fn find_projection(spec: &str) -> Result<ProjectionMap> {
    let (sys, name) = spec
        .split_once(':')
        .ok_or_else(|| Error::InvalidParameter(format!("projection must be system:name, got {spec:?}")))?;
    models::builtin_systems()
        .into_iter()
        .filter(|s| s.name == sys)
        .flat_map(|s| s.projections)
        .find(|p| p.name == name)
        .ok_or_else(|| Error::InvalidParameter(format!("unknown projection {spec:?}")))
}

fn incidences(cfg: &ExperimentConfig) -> Result<Report> {
    let fams = need_families(cfg, 2..=2)?;
    let opts = IncidenceOptions {
        workers: cfg.workers,
        invariant: cfg.projection.as_deref().map(find_projection).transpose()?,
    };
    let set = incidence_set(&fams[0], &fams[1], &opts)?;
    let mut csv = format!("{CSV_HEADER}\n");
    for r in &set.records {
        csv.push_str(&r.csv_row());
        csv.push('\n');
    }
    let tangential = set.records.iter().filter(|r| r.tangential == Some(true)).count();
    let json = json!({
        "l1": fams[0].len(),
        "l2": fams[1].len(),
        "incidences": set.count,
        "tangential": tangential,
        "records": set.records.iter().map(|r| json!({
            "id1": r.id1, "id2": r.id2, "point": r.point.to_string(), "tangential": r.tangential,
        })).collect::<Vec<_>>(),
    });
    Ok(Report {
        files: vec![("incidences.csv".into(), csv), ("incidences.json".into(), pretty(&json))],
        summary: format!(
            "#L1 = {}, #L2 = {}, incidences = {}, tangential = {tangential}",
            fams[0].len(),
            fams[1].len(),
            set.count
        ),
    })
}

fn joints(cfg: &ExperimentConfig) -> Result<Report> {
    let fams = need_families(cfg, 1..=usize::MAX)?;
    let all: Vec<Curve> = fams.iter().flatten().cloned().collect();
    let dim = all.first().map_or(0, Curve::ambient_dim);
    let v_dim = cfg.v_dim.unwrap_or(dim);
    let js = detect_joints(&all, v_dim, cfg.workers)?;
    let mut t = Table::new(&["point", "multiplicity", "curves"]);
    for j in &js {
        let ids: Vec<String> = j.curves.iter().map(u64::to_string).collect();
        t.push(vec![format!("\"{}\"", j.point), j.multiplicity.to_string(), format!("\"{}\"", ids.join(" "))]);
    }
    let mut summary = format!("#L = {}, joints = {}", all.len(), js.len());
    let mut report = Report::table("joints", &t, String::new());
    if fams.len() >= 2 {
        let m = multijoint_sum(&fams, fams.len(), cfg.digits, cfg.workers)?;
        write!(summary, ", multijoint sum = {}", m.sum).unwrap();
        report.files.push((
            "multijoints.json".into(),
            pretty(&json!({
                "n": fams.len(),
                "sum": m.sum.to_string(),
                "joints": m.joints.iter().map(|(p, k)| json!({"point": p.to_string(), "tuples": k})).collect::<Vec<_>>(),
            })),
        ));
    }
    report.summary = summary;
    Ok(report)
}

fn tangent_scan(cfg: &ExperimentConfig) -> Result<Report> {
    let d = cfg.digits;
    let mut t = Table::new(&["N", "curves", "tangent_pairs", "ratio_4_3", "ratio_3_2"]);
    for &n in &cfg.scale {
        let c = parabola_grid_size(n) as u128;
        let tp = count_tangent_pairs(n)?;
        t.push(vec![
            n.to_string(),
            c.to_string(),
            tp.to_string(),
            ratio_pow(tp, c, 4, 3, d),
            ratio_pow(tp, c, 3, 2, d),
        ]);
    }
    Ok(Report::table("tangent-scan", &t, format!("{} rows", t.rows.len())))
}

fn n7_grid(cfg: &ExperimentConfig) -> Result<Report> {
    let d = cfg.digits;
    let mut t = Table::new(&["N", "points", "curves", "incidences", "ratio_2_3"]);
    for &n in &cfg.scale {
        let p = ((n + 1) * (3 * n.pow(3) + 1)) as u128;
        let c = parabola_grid_size(n) as u128;
        let i = n7_grid_incidences(n);
        if i != n7_grid_formula(n) {
            return Err(Error::InvalidParameter(format!("N = {n}: membership count {i} differs from the closed form")));
        }
        t.push(vec![n.to_string(), p.to_string(), c.to_string(), i.to_string(), ratio_pow(i as u128, p * c, 2, 3, d)]);
    }
    Ok(Report::table("n7-grid", &t, format!("{} rows", t.rows.len())))
}

fn square_sieve(cfg: &ExperimentConfig) -> Result<Report> {
    let d = cfg.digits;
    let mut t = Table::new(&["N", "triples", "ratio_n2"]);
    for &n in &cfg.scale {
        let (count, _) = count_square_triples(n)?;
        let r = int(count as u128, d).div(&int((n as u128).pow(2), d));
        t.push(vec![n.to_string(), count.to_string(), r.to_string()]);
    }
    Ok(Report::table("square-sieve", &t, format!("{} rows", t.rows.len())))
}

/// Reads points, one per line: rationals separated by whitespace or commas,
/// optionally followed by `; weight`.
pub fn parse_points(text: &str) -> Result<WeightedPoints> {
    let mut pts = Vec::new();
    let mut weights = Vec::new();
    for (no, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| Error::Parse { line: no + 1, msg };
        let (coords, w) = match line.split_once(';') {
            Some((c, w)) => (c, w.trim().parse::<u64>().map_err(|e| err(format!("bad weight: {e}")))?),
            None => (line, 1),
        };
        let p: Vec<Rational> = coords
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|s| !s.is_empty())
            .map(|s| parse_rational(s).map_err(|e| err(e.to_string())))
            .collect::<Result<_>>()?;
        if let Some(first) = pts.first().map(Vec::len) {
            if first != p.len() {
                return Err(err(format!("expected {first} coordinates, got {}", p.len())));
            }
        }
        pts.push(p);
        weights.push(w);
    }
    let dim = pts.first().map_or(0, Vec::len);
    WeightedPoints::new(dim, pts, weights)
}

fn partition(cfg: &ExperimentConfig) -> Result<Report> {
    let rounds = cfg.rounds.unwrap_or(1);
    if rounds == 0 {
        return Err(Error::InvalidParameter("rounds must be at least 1".into()));
    }
    let pts = match (&cfg.points, cfg.random_points) {
        (Some(path), None) => parse_points(&fs::read_to_string(path)?)?,
        (None, Some(n)) => {
            let m = cfg.coord_max.unwrap_or(1000);
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            let p = (0..n)
                .map(|_| (0..2).map(|_| Rational::from_integer(rng.gen_range(-m..=m).into())).collect())
                .collect();
            WeightedPoints::unit(2, p)?
        }
        _ => return Err(Error::InvalidParameter("partition takes exactly one of a points file or a random point count".into())),
    };
    let opts = CutOptions {
        seed: cfg.seed,
        ..CutOptions::default()
    };
    let r = partition_points(&pts, rounds, &opts)?;
    let summary = format!(
        "points = {}, classes = {}, max class weight = {}, wall weight = {}, degree = {}",
        pts.len(),
        r.classes.len(),
        r.max_class_weight(),
        r.wall_weight,
        r.degree()
    );
    Ok(Report {
        files: vec![("partition.json".into(), r.to_json() + "\n")],
        summary,
    })
}

fn bounds(cfg: &ExperimentConfig) -> Result<Report> {
    let counts = cfg
        .counts
        .clone()
        .ok_or_else(|| Error::InvalidParameter("bounds needs counts".into()))?;
    let r = bound_report(counts, cfg.digits)?;
    let json = serde_json::to_value(&r).expect("bound report serializes");
    Ok(Report {
        files: vec![("bounds.json".into(), pretty(&json))],
        summary: r.to_string(),
    })
}

pub fn builtin_algebra(name: &str) -> Option<NilpotentAlgebra> {
    match name {
        "heisenberg" | "free2-step2" => Some(NilpotentAlgebra::heisenberg()),
        "free2-step3" => NilpotentAlgebra::free_two_generator(3).ok(),
        "abelian3" => Some(NilpotentAlgebra::abelian(3)),
        _ => None,
    }
}

fn lift_demo(cfg: &ExperimentConfig) -> Result<Report> {
    let name = cfg.algebra.as_deref().unwrap_or("heisenberg");
    let alg = match builtin_algebra(name) {
        Some(a) => a,
        None => NilpotentAlgebra::parse(&fs::read_to_string(name)?)?,
    };
    let check = check_algebra(&alg);
    if !check.valid() {
        return Err(Error::InvalidParameter(format!("algebra fails validation: {check:?}")));
    }
    let basis = weak_malcev_basis(&alg, &[])?;
    let fields = pushforward_fields(&alg, &basis)?;
    let sigma = bracket_sign(&alg, &basis, &fields)?;
    let base = vec![Rational::from_integer(1.into()); basis.split];
    let degrees = fields
        .iter()
        .map(|f| exp_flow(f, &base, alg.step() + 1).map(|c| c.degree()))
        .collect::<Result<Vec<_>>>()?;
    let vec_str = |v: &[Rational]| format!("({})", v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "));
    let json = json!({
        "algebra": alg.to_string(),
        "check": check,
        "basis": basis.vectors.iter().map(|v| vec_str(v)).collect::<Vec<_>>(),
        "split": basis.split,
        "fields": fields.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
        "sigma": sigma,
        "flow_degrees": degrees,
    });
    let mut summary = String::new();
    for (i, f) in fields.iter().enumerate() {
        writeln!(summary, "X{} = {f}", i + 1).unwrap();
    }
    write!(summary, "sigma = {}", sigma.map_or("none".to_string(), |s| s.to_string())).unwrap();
    Ok(Report {
        files: vec![("lift.json".into(), pretty(&json))],
        summary,
    })
}

/// Least-squares line through `(log x, log y)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Fit {
    pub slope: f64,
    pub intercept: f64,
    /// Sum of squared residuals in log space.
    pub residual: f64,
}

pub fn fit_exponent(series: &[(f64, f64)]) -> Result<Fit> {
    if series.len() < 3 {
        return Err(Error::InvalidParameter(format!("fit needs at least 3 points, got {}", series.len())));
    }
    if let Some(&(x, y)) = series.iter().find(|&&(x, y)| !(x > 0.0 && y > 0.0 && x.is_finite() && y.is_finite())) {
        return Err(Error::InvalidParameter(format!("fit needs positive values, got ({x}, {y})")));
    }
    let n = series.len() as f64;
    let pts: Vec<(f64, f64)> = series.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::InvalidParameter("fit needs at least two distinct x values".into()));
    }
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let residual = pts.iter().map(|p| (p.1 - intercept - slope * p.0).powi(2)).sum();
    Ok(Fit { slope, intercept, residual })
}

fn fit(cfg: &ExperimentConfig) -> Result<Report> {
    let f = fit_exponent(&cfg.series)?;
    let json = serde_json::to_value(&f).expect("fit serializes");
    Ok(Report {
        files: vec![("fit.json".into(), pretty(&json))],
        summary: format!("slope = {}, residual = {}", f.slope, f.residual),
    })
}

/// Reads `x,y` rows (header optional) for `fit`.
pub fn parse_series(text: &str) -> Result<Vec<(f64, f64)>> {
    let mut out = Vec::new();
    for (no, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let f: Vec<&str> = line.split(',').map(str::trim).collect();
        let parsed = (f.len() >= 2).then(|| (f[0].parse::<f64>(), f[1].parse::<f64>()));
        match parsed {
            Some((Ok(x), Ok(y))) => out.push((x, y)),
            _ if no == 0 && out.is_empty() => continue,
            _ => {
                return Err(Error::Parse {
                    line: no + 1,
                    msg: format!("expected x,y got {line:?}"),
                })
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_power_law() {
        let s: Vec<(f64, f64)> = [10.0f64, 100.0, 1000.0].iter().map(|&x| (x, x.powf(1.5))).collect();
        let f = fit_exponent(&s).unwrap();
        assert!((f.slope - 1.5).abs() < 1e-12);
        assert!(f.residual < 1e-20);
        let s: Vec<(f64, f64)> = [1.0, 2.0, 5.0, 9.0].iter().map(|&x| (x, 7.0 * x)).collect();
        assert!((fit_exponent(&s).unwrap().slope - 1.0).abs() < 1e-12);
        assert!(fit_exponent(&[(1.0, 1.0), (2.0, 0.0), (3.0, 1.0)]).is_err());
        assert!(fit_exponent(&[(1.0, 1.0), (2.0, 2.0)]).is_err());
    }

    #[test]
    fn empty_scale_is_rejected() {
        let cfg = ExperimentConfig::new(Command::TangentScan);
        assert!(matches!(run_experiment(&cfg), Err(Error::InvalidParameter(_))));
        let mut cfg = ExperimentConfig::new(Command::N7Grid);
        cfg.scale = vec![3, 2];
        assert!(run_experiment(&cfg).is_err());
        cfg.scale = vec![2, 100];
        assert!(matches!(run_experiment(&cfg), Err(Error::ScaleCapExceeded(_))));
        cfg.scale = vec![2];
        cfg.digits = 10;
        assert!(run_experiment(&cfg).is_err());
    }

    #[test]
    fn tangent_scan_rows() {
        let mut cfg = ExperimentConfig::new(Command::TangentScan);
        cfg.scale = vec![1, 2];
        let r = run_experiment(&cfg).unwrap();
        let csv = &r.files[0].1;
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "N,curves,tangent_pairs,ratio_4_3,ratio_3_2");
        // 8^(4/3) = 16
        assert!(lines[1].starts_with("1,8,4,0.250000"));
        // 265 / 135^(3/2)
        assert!(lines[2].starts_with("2,135,265,"));
        assert!(lines[2].contains(",0.16894495"));
    }

    #[test]
    fn config_round_trip() {
        let cfg = ExperimentConfig::parse_toml(
            "command = \"n7-grid\"\nscale = [2, 3]\ndigits = 20\n",
        )
        .unwrap();
        assert_eq!(cfg.command, Command::N7Grid);
        let r = run_experiment(&cfg).unwrap();
        let csv = &r.files[0].1;
        assert!(csv.contains("\n2,75,135,405,"));
        assert!(ExperimentConfig::parse_toml("command = \"nope\"").is_err());
    }

    #[test]
    fn points_file_format() {
        let p = parse_points("0 0\n1/2, 3 ; 4\n# comment\n-1 2\n").unwrap();
        assert_eq!(p.dim, 2);
        assert_eq!(p.weights, vec![1, 4, 1]);
        assert!(parse_points("0 0\n1\n").is_err());
    }
}
