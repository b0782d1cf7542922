use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hp::HpDecimal;
use crate::rational::Rational;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundCounts {
    pub l1: u64,
    pub l2: u64,
    /// `#L` for the joints bound.
    pub lines: u64,
    pub incidences: u64,
    pub joints: u64,
    pub n: u32,
}

/// Right-hand sides of the incidence and joints bounds, with observed ratios.
#[derive(Clone, Debug, Serialize)]
pub struct BoundReport {
    pub counts: BoundCounts,
    pub digits: u32,
    /// `#L^(n/(n-1))`.
    pub joints_rhs: HpDecimal,
    pub joints_ratio: Option<HpDecimal>,
    /// `(#L1 #L2)^((n-1)/(2n-3))`, for `n >= 3`.
    pub multijoint_main: Option<HpDecimal>,
    /// `#L1 + #L2 + main term`.
    pub multijoint_rhs: Option<HpDecimal>,
    pub multijoint_ratio: Option<HpDecimal>,
    /// `min{#L1 + #L1^(1/(n-1)) #L2, #L2 + #L2^(1/(n-1)) #L1}`.
    pub simple_rhs: HpDecimal,
    pub simple_ratio: Option<HpDecimal>,
    pub warnings: Vec<String>,
}

fn int(v: u64, digits: u32) -> HpDecimal {
    HpDecimal::from_integer(v.into(), digits)
}

fn ratio(lhs: u64, rhs: &HpDecimal, digits: u32) -> Option<HpDecimal> {
    (!rhs.is_zero()).then(|| int(lhs, digits).div(rhs))
}

pub fn bound_report(counts: BoundCounts, digits: u32) -> Result<BoundReport> {
    let n = counts.n;
    if n < 2 {
        return Err(Error::InvalidParameter("bounds need n >= 2".into()));
    }
    let r = |v: u64| Rational::from_integer(v.into());
    let joints_rhs = HpDecimal::pow_ratio(&r(counts.lines), n, n - 1, digits);
    let mut warnings = Vec::new();
    let (main, full) = if n >= 3 {
        let main = HpDecimal::pow_ratio(&r(counts.l1 * counts.l2), n - 1, 2 * n - 3, digits);
        let full = int(counts.l1, digits).add(&int(counts.l2, digits)).add(&main);
        (Some(main), Some(full))
    } else {
        warnings.push("multijoint bound needs n >= 3".to_string());
        (None, None)
    };
    let side = |a: u64, b: u64| int(a, digits).add(&HpDecimal::pow_ratio(&r(a), 1, n - 1, digits).mul(&int(b, digits)));
    let simple_rhs = side(counts.l1, counts.l2).min(side(counts.l2, counts.l1));
    Ok(BoundReport {
        joints_ratio: ratio(counts.joints, &joints_rhs, digits),
        multijoint_ratio: full.as_ref().and_then(|f| ratio(counts.incidences, f, digits)),
        simple_ratio: ratio(counts.incidences, &simple_rhs, digits),
        joints_rhs,
        multijoint_main: main,
        multijoint_rhs: full,
        simple_rhs,
        warnings,
        digits,
        counts,
    })
}

impl fmt::Display for BoundReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = &self.counts;
        let opt = |v: &Option<HpDecimal>| v.as_ref().map_or("n/a".to_string(), |x| x.to_string());
        writeln!(f, "n            {}", c.n)?;
        writeln!(f, "#L1 #L2 #L   {} {} {}", c.l1, c.l2, c.lines)?;
        writeln!(f, "#I #J        {} {}", c.incidences, c.joints)?;
        writeln!(f, "joints rhs   {}", self.joints_rhs)?;
        writeln!(f, "joints ratio {}", opt(&self.joints_ratio))?;
        writeln!(f, "multi main   {}", opt(&self.multijoint_main))?;
        writeln!(f, "multi rhs    {}", opt(&self.multijoint_rhs))?;
        writeln!(f, "multi ratio  {}", opt(&self.multijoint_ratio))?;
        writeln!(f, "simple rhs   {}", self.simple_rhs)?;
        writeln!(f, "simple ratio {}", opt(&self.simple_ratio))?;
        for w in &self.warnings {
            writeln!(f, "warning      {w}")?;
        }
        Ok(())
    }
}
