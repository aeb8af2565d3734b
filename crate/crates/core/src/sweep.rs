//! One-dimensional parameter sweeps and their CSV form.

use std::fmt::Write as _;

use clap::ValueEnum;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::budget::{evaluate, EvalOptions};
use crate::channel::GasAttenuationProvider;
use crate::error::{Error, Result};
use crate::metrics::{Feasibility, LinkBudgetResult};
use crate::scenario::{Placement, Reflectors, Scenario};

/// Environment variable capping the sweep worker count (0 means automatic).
pub const THREADS_ENV: &str = "RSS_LB_THREADS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum SweepVariable {
    /// Number of reflectors `N` (rounded to an integer).
    ReflectorCount,
    /// Carrier frequency in GHz.
    FrequencyGhz,
    /// Receive antenna gain in dBi.
    RxGainDbi,
    /// `nu = 2 - r/d`, in [0, 2].
    NormalizedPlacement,
    /// Coverage radius `d` in metres.
    CoverageRadius,
    /// Receiver sensitivity in dBm.
    ThresholdDbm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Scale {
    #[default]
    Linear,
    Log,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub variable: SweepVariable,
    pub start: f64,
    pub stop: f64,
    pub points: usize,
    pub scale: Scale,
}

impl SweepSpec {
    pub fn new(
        variable: SweepVariable,
        start: f64,
        stop: f64,
        points: usize,
        scale: Scale,
    ) -> Result<Self> {
        let spec = SweepSpec {
            variable,
            start,
            stop,
            points,
            scale,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.points < 2 {
            return Err(Error::Usage(format!(
                "a sweep needs at least 2 points, got {}",
                self.points
            )));
        }
        if !(self.start.is_finite() && self.stop.is_finite() && self.start < self.stop) {
            return Err(Error::Usage(format!(
                "sweep range must satisfy start < stop, got {}..{}",
                self.start, self.stop
            )));
        }
        if self.scale == Scale::Log && self.start <= 0.0 {
            return Err(Error::Usage(
                "a logarithmic sweep needs a positive start".into(),
            ));
        }
        Ok(())
    }

    /// Grid values in increasing order. The endpoints are hit exactly.
    pub fn grid(&self) -> Vec<f64> {
        let last = (self.points - 1) as f64;
        (0..self.points)
            .map(|i| {
                if i + 1 == self.points {
                    return self.stop;
                }
                let t = i as f64 / last;
                match self.scale {
                    Scale::Linear => self.start + (self.stop - self.start) * t,
                    Scale::Log => self.start * (self.stop / self.start).powf(t),
                }
            })
            .collect()
    }
}

/// Scenario with the swept variable set to `x`. Returns the x actually used
/// (reflector counts are rounded).
pub fn apply(base: &Scenario, variable: SweepVariable, x: f64) -> Result<(Scenario, f64)> {
    let mut s = base.clone();
    let mut used = x;
    match variable {
        SweepVariable::ReflectorCount => {
            let n = x.round().max(1.0);
            s.reflectors = Reflectors::Count(n as u64);
            used = n;
        }
        SweepVariable::FrequencyGhz => s.radio.f_ghz = x,
        SweepVariable::RxGainDbi => s.radio.gr_dbi = x,
        SweepVariable::NormalizedPlacement => {
            if base.placement != Placement::Optimal {
                return Err(Error::Usage(
                    "a placement sweep needs a scenario with \"placement\": \"optimal\"".into(),
                ));
            }
            if !(0.0..=2.0).contains(&x) {
                return Err(Error::Usage(format!(
                    "normalized placement must lie in [0, 2], got {x}"
                )));
            }
            let r = (2.0 - x) * s.platform.coverage_radius_m;
            s.placement = Placement::Fixed(r.clamp(0.0, 2.0 * s.platform.coverage_radius_m));
        }
        SweepVariable::CoverageRadius => s.platform.coverage_radius_m = x,
        SweepVariable::ThresholdDbm => s.threshold_dbm = x,
    }
    Ok((s, used))
}

/// Evaluates `base` at every grid point. Rows come back in grid order no
/// matter how the work was scheduled.
pub fn run_sweep(
    base: &Scenario,
    spec: &SweepSpec,
    gas: &GasAttenuationProvider,
    opts: EvalOptions,
) -> Result<Vec<(f64, LinkBudgetResult)>> {
    spec.validate()?;
    if spec.variable == SweepVariable::NormalizedPlacement && base.placement != Placement::Optimal {
        return Err(Error::Usage(
            "a placement sweep needs a scenario with \"placement\": \"optimal\"".into(),
        ));
    }
    spec.grid()
        .into_par_iter()
        .map(|x| {
            let (s, used) = apply(base, spec.variable, x)?;
            Ok((used, evaluate(&s, gas, opts)?.result))
        })
        .collect()
}

pub const SWEEP_CSV_HEADER: &str =
    "x,pr_mean_dbm,sigma_s_db,snr_db,rate_bps,outage,n_used,feasible";

/// Comma-separated result fields without `x`, in header order. Floats use
/// the shortest representation that parses back to the same value.
pub fn result_fields(r: &LinkBudgetResult) -> String {
    format!(
        "{},{},{},{},{},{},{}",
        r.pr_mean_dbm,
        r.sigma_s_db,
        r.snr_db,
        r.rate_bps,
        r.outage,
        r.n_used,
        r.feasibility.is_feasible()
    )
}

pub fn emit_sweep_csv(rows: &[(f64, LinkBudgetResult)]) -> String {
    let mut out = String::with_capacity(64 * (rows.len() + 1));
    out.push_str(SWEEP_CSV_HEADER);
    out.push('\n');
    for (x, r) in rows {
        let _ = writeln!(out, "{x},{}", result_fields(r));
    }
    out
}

/// Reads a document written by [`emit_sweep_csv`].
pub fn parse_sweep_csv(text: &str) -> Result<Vec<(f64, LinkBudgetResult)>> {
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let header = rdr.headers()?.iter().collect::<Vec<_>>().join(",");
    if header != SWEEP_CSV_HEADER {
        return Err(Error::Schema(format!("unexpected sweep header `{header}`")));
    }
    let num = |raw: &str| -> Result<f64> {
        raw.parse::<f64>()
            .map_err(|_| Error::Schema(format!("cannot parse `{raw}` as a number")))
    };
    let mut rows = Vec::new();
    for record in rdr.records() {
        let rec = record?;
        let feasibility = match &rec[7] {
            "true" => Feasibility::Feasible,
            "false" => Feasibility::NminExceedsNmax,
            other => return Err(Error::Schema(format!("bad feasible flag `{other}`"))),
        };
        let n_used = rec[6]
            .parse::<u64>()
            .map_err(|_| Error::Schema(format!("bad reflector count `{}`", &rec[6])))?;
        rows.push((
            num(&rec[0])?,
            LinkBudgetResult {
                pr_mean_dbm: num(&rec[1])?,
                sigma_s_db: num(&rec[2])?,
                snr_db: num(&rec[3])?,
                rate_bps: num(&rec[4])?,
                outage: num(&rec[5])?,
                n_used,
                feasibility,
            },
        ));
    }
    Ok(rows)
}

/// Sizes the global worker pool from `RSS_LB_THREADS`. Unset, unparsable or
/// 0 leaves the default (one worker per core). Only the first call has any
/// effect.
pub fn configure_threads_from_env() {
    let requested = std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .unwrap_or(0);
    if requested > 0 {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(requested)
            .build_global();
    }
}
