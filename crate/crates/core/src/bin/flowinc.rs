use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use flowinc::experiment::{parse_series, run_experiment, Command, ExperimentConfig};
use flowinc::families::FamilySpec;
use flowinc::incidence::BoundCounts;
use flowinc::Error;

/// Incidence experiments for integral curves of polynomial vector fields.
#[derive(Parser, Debug)]
#[command(name = "flowinc", version)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Args, Debug)]
struct Common {
    /// Family spec, `kind:key=value,...`; repeat for several families.
    #[arg(long = "family", global = true)]
    families: Vec<String>,
    /// Scale values: `a..b` (inclusive), `a..=b`, or a comma list.
    #[arg(long, global = true)]
    n_range: Option<String>,
    /// Directory for output files; without it the main table goes to stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Decimal digits for non-integer columns.
    #[arg(long, global = true)]
    precision: Option<u32>,
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// TOML config; flags given on the command line take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Generate curve families as JSON lines.
    Gen,
    /// Exact incidences between two families.
    Incidences {
        /// Invariant map of the first family, `system:projection`.
        #[arg(long)]
        project: Option<String>,
    },
    /// Joints of the union of the families; multijoint sum with several families.
    Joints {
        #[arg(long)]
        v_dim: Option<usize>,
    },
    /// Tangent pairs in the parabola grid.
    TangentScan,
    /// Incidences of the N^7 point/parabola grid.
    N7Grid,
    /// Solutions of 4ac = b^2 in the parabola parameter box.
    SquareSieve,
    /// Iterated polynomial ham-sandwich partition of a point set.
    Partition {
        /// Points file: one point per line, optional `; weight`.
        #[arg(long)]
        points: Option<PathBuf>,
        /// Use this many random planar integer points instead.
        #[arg(long)]
        random: Option<usize>,
        #[arg(long)]
        coord_max: Option<i64>,
        #[arg(long)]
        rounds: Option<u32>,
    },
    /// Evaluate the incidence and joints bounds for given counts.
    Bounds {
        #[arg(long, default_value_t = 0)]
        l1: u64,
        #[arg(long, default_value_t = 0)]
        l2: u64,
        #[arg(long, default_value_t = 0)]
        lines: u64,
        #[arg(long, default_value_t = 0)]
        incidences: u64,
        #[arg(long, default_value_t = 0)]
        joints: u64,
        /// Ambient dimension n.
        #[arg(long)]
        dim: u32,
    },
    /// Malcev basis, pushforward fields and their flows for a nilpotent algebra.
    LiftDemo {
        /// Built-in name or algebra file.
        #[arg(long)]
        algebra: Option<String>,
    },
    /// Log-log least-squares slope of a series.
    Fit {
        /// CSV file of x,y rows.
        #[arg(long)]
        input: Option<PathBuf>,
        /// Inline series `x:y,x:y,...`.
        #[arg(long)]
        series: Option<String>,
    },
}

fn invalid(m: impl Into<String>) -> Error {
    Error::InvalidParameter(m.into())
}

fn parse_range(s: &str) -> Result<Vec<u64>, Error> {
    let num = |t: &str| t.trim().parse::<u64>().map_err(|e| invalid(format!("bad scale value {t:?}: {e}")));
    if let Some((a, b)) = s.split_once("..") {
        let b = b.strip_prefix('=').unwrap_or(b);
        let (a, b) = (num(a)?, num(b)?);
        if a > b {
            return Err(invalid(format!("empty range {s:?}")));
        }
        return Ok((a..=b).collect());
    }
    s.split(',').filter(|t| !t.trim().is_empty()).map(num).collect()
}

fn parse_inline_series(s: &str) -> Result<Vec<(f64, f64)>, Error> {
    s.split(',')
        .map(|p| {
            let (x, y) = p.split_once(':').ok_or_else(|| invalid(format!("series entry {p:?} is not x:y")))?;
            let f = |t: &str| t.trim().parse::<f64>().map_err(|e| invalid(format!("bad number {t:?}: {e}")));
            Ok((f(x)?, f(y)?))
        })
        .collect()
}

fn build_config(cli: Cli) -> Result<ExperimentConfig, Error> {
    let command = match &cli.command {
        Cmd::Gen => Command::Gen,
        Cmd::Incidences { .. } => Command::Incidences,
        Cmd::Joints { .. } => Command::Joints,
        Cmd::TangentScan => Command::TangentScan,
        Cmd::N7Grid => Command::N7Grid,
        Cmd::SquareSieve => Command::SquareSieve,
        Cmd::Partition { .. } => Command::Partition,
        Cmd::Bounds { .. } => Command::Bounds,
        Cmd::LiftDemo { .. } => Command::LiftDemo,
        Cmd::Fit { .. } => Command::Fit,
    };
    let c = cli.common;
    let mut cfg = match &c.config {
        Some(path) => {
            let cfg = ExperimentConfig::parse_toml(&fs::read_to_string(path)?)?;
            if cfg.command != command {
                return Err(invalid(format!(
                    "config is for `{}`, not `{}`",
                    cfg.command.name(),
                    command.name()
                )));
            }
            cfg
        }
        None => ExperimentConfig::new(command),
    };
    if !c.families.is_empty() {
        cfg.families = c.families.iter().map(|f| FamilySpec::parse_flag(f)).collect::<Result<_, _>>()?;
    }
    if let Some(r) = &c.n_range {
        cfg.scale = parse_range(r)?;
    }
    cfg.out = c.out.or(cfg.out);
    cfg.digits = c.precision.unwrap_or(cfg.digits);
    cfg.workers = c.workers.unwrap_or(cfg.workers);
    cfg.seed = c.seed.unwrap_or(cfg.seed);
    match cli.command {
        Cmd::Incidences { project } => cfg.projection = project.or(cfg.projection),
        Cmd::Joints { v_dim } => cfg.v_dim = v_dim.or(cfg.v_dim),
        Cmd::Partition {
            points,
            random,
            coord_max,
            rounds,
        } => {
            cfg.points = points.or(cfg.points);
            cfg.random_points = random.or(cfg.random_points);
            cfg.coord_max = coord_max.or(cfg.coord_max);
            cfg.rounds = rounds.or(cfg.rounds);
        }
        Cmd::Bounds {
            l1,
            l2,
            lines,
            incidences,
            joints,
            dim,
        } => {
            cfg.counts = Some(BoundCounts {
                l1,
                l2,
                lines,
                incidences,
                joints,
                n: dim,
            })
        }
        Cmd::LiftDemo { algebra } => cfg.algebra = algebra.or(cfg.algebra),
        Cmd::Fit { input, series } => match (input, series) {
            (Some(p), None) => cfg.series = parse_series(&fs::read_to_string(p)?)?,
            (None, Some(s)) => cfg.series = parse_inline_series(&s)?,
            (None, None) => {}
            _ => return Err(invalid("fit takes --input or --series, not both")),
        },
        _ => {}
    }
    Ok(cfg)
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::ScaleCapExceeded(_) | Error::SearchExhausted(_) => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = build_config(cli).and_then(|cfg| {
        let report = run_experiment(&cfg)?;
        match &cfg.out {
            Some(dir) => report.write(dir)?,
            None => {
                if let Some((_, body)) = report.files.first() {
                    print!("{body}");
                }
            }
        }
        Ok(report)
    });
    match result {
        Ok(report) => {
            eprintln!("{}", report.summary);
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
