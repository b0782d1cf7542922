use std::fs;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::Curve;
use crate::algebraic::UPoly;
use crate::error::{Error, Result};
use crate::rational::{parse_rational, Rational};

#[derive(Serialize, Deserialize)]
struct CurveRecord {
    id: u64,
    family_tag: String,
    ambient_dim: usize,
    base_point: Vec<String>,
    generator_coords: Option<Vec<String>>,
    param: Vec<Vec<String>>,
}

fn strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(|r| r.to_string()).collect()
}

fn rationals(v: &[String], line: usize) -> Result<Vec<Rational>> {
    v.iter()
        .map(|s| {
            parse_rational(s).map_err(|_| Error::Parse {
                line,
                msg: format!("not a rational: {s:?}"),
            })
        })
        .collect()
}

/// One JSON object per curve.
pub fn curve_to_line(c: &Curve) -> String {
    let rec = CurveRecord {
        id: c.id,
        family_tag: c.family_tag.clone(),
        ambient_dim: c.ambient_dim(),
        base_point: strings(&c.base_point),
        generator_coords: c.generator_coords.as_deref().map(strings),
        param: c.param.iter().map(|p| strings(p.coeffs())).collect(),
    };
    serde_json::to_string(&rec).expect("curve record serializes")
}

/// Parses one record; `line` is used in error messages.
pub fn curve_from_line(s: &str, line: usize) -> Result<Curve> {
    let rec: CurveRecord = serde_json::from_str(s).map_err(|e| Error::Parse {
        line,
        msg: e.to_string(),
    })?;
    if rec.param.len() != rec.ambient_dim || rec.base_point.len() != rec.ambient_dim {
        return Err(Error::Parse {
            line,
            msg: "ambient_dim disagrees with param or base_point".into(),
        });
    }
    let param = rec
        .param
        .iter()
        .map(|c| rationals(c, line).map(UPoly::new))
        .collect::<Result<Vec<_>>>()?;
    let base = rationals(&rec.base_point, line)?;
    let coords = rec.generator_coords.as_deref().map(|c| rationals(c, line)).transpose()?;
    Curve::new(rec.id, rec.family_tag, param, base, coords).map_err(|e| Error::Parse {
        line,
        msg: e.to_string(),
    })
}

pub fn save_family(curves: &[Curve], path: &Path) -> Result<()> {
    let mut f = fs::File::create(path)?;
    for c in curves {
        writeln!(f, "{}", curve_to_line(c))?;
    }
    Ok(())
}

/// Reads a curve file; blank lines are skipped.
pub fn load_family(path: &Path) -> Result<Vec<Curve>> {
    let f = fs::File::open(path)?;
    let mut out = Vec::new();
    for (k, line) in BufReader::new(f).lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        out.push(curve_from_line(&line, k + 1)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, rat};

    #[test]
    fn record_round_trip() {
        let c = Curve::new(
            7,
            "demo",
            vec![UPoly::new(vec![frac(1, 2), rat(0), frac(-3, 7)]), UPoly::from_ints(&[0, 1])],
            vec![frac(1, 2), rat(0)],
            Some(vec![rat(1), frac(2, 3)]),
        )
        .unwrap();
        let line = curve_to_line(&c);
        assert_eq!(curve_from_line(&line, 1).unwrap(), c);
    }

    #[test]
    fn bad_token_reports_line() {
        let s = r#"{"id":1,"family_tag":"x","ambient_dim":1,"base_point":["1"],"generator_coords":null,"param":[["1","x"]]}"#;
        assert!(matches!(curve_from_line(s, 4), Err(Error::Parse { line: 4, .. })));
    }
}
