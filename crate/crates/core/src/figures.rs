//! Canned sweeps that regenerate the standard comparison plots as CSV.
//!
//! Every figure except `fig3` is written in long format: a `series` column
//! followed by the sweep columns, so one file holds all curves of a plot.

use std::fmt::Write as _;

use clap::ValueEnum;

use crate::budget::EvalOptions;
use crate::channel::{plos_ntn, EnvKind, GasAttenuationProvider};
use crate::error::Result;
use crate::geometry::PlatformClass;
use crate::reflection::Paradigm;
use crate::scenario::{load_scenario, Scenario};
use crate::sweep::{result_fields, run_sweep, Scale, SweepSpec, SweepVariable, SWEEP_CSV_HEADER};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FigureId {
    /// HAPS/LEO LoS probability against elevation.
    Fig3,
    /// Received power against reflector count, specular.
    Fig5,
    /// Received power against reflector count, scattering.
    Fig6,
    /// Received power against frequency at a full surface, log-distance.
    Fig7,
    /// Received power against frequency at a full surface, standards models.
    Fig8,
    /// Rate against receive gain.
    Fig9,
    /// Rate against normalized placement.
    Fig10,
    /// Distribution of received power (outage against threshold).
    Fig11,
    /// Outage against coverage radius at -115 dBm.
    Fig12,
}

impl FigureId {
    pub const ALL: [FigureId; 9] = [
        FigureId::Fig3,
        FigureId::Fig5,
        FigureId::Fig6,
        FigureId::Fig7,
        FigureId::Fig8,
        FigureId::Fig9,
        FigureId::Fig10,
        FigureId::Fig11,
        FigureId::Fig12,
    ];
}

/// One curve: a labelled scenario plus the sweep to run on it.
#[derive(Debug, Clone)]
pub struct Series {
    pub label: String,
    pub scenario: Scenario,
    pub sweep: SweepSpec,
}

#[derive(Debug, Clone, Default)]
pub struct FigureOptions {
    pub eval: EvalOptions,
    pub gas: GasAttenuationProvider,
    pub seed: Option<u64>,
}

fn scenario(
    class: PlatformClass,
    paradigm: Paradigm,
    channel: &str,
    env: EnvKind,
    extra: &str,
) -> Scenario {
    let text = format!(
        r#"{{"platform":"{}","paradigm":"{}","channel":"{}","environment":"{}"{}}}"#,
        class.label(),
        paradigm.label(),
        channel,
        env.label(),
        extra
    );
    load_scenario(&text).expect("figure scenarios are valid")
}

/// Platform / environment pairs for the standards-model figures. The
/// terrestrial model is urban only.
fn standards_pairs() -> Vec<(PlatformClass, EnvKind)> {
    let mut pairs = vec![(PlatformClass::Terrestrial, EnvKind::Urban)];
    for class in [PlatformClass::Uav, PlatformClass::Haps, PlatformClass::Leo] {
        for env in EnvKind::ALL {
            pairs.push((class, env));
        }
    }
    pairs
}

fn spec(variable: SweepVariable, start: f64, stop: f64, points: usize, scale: Scale) -> SweepSpec {
    SweepSpec::new(variable, start, stop, points, scale).expect("figure sweeps are valid")
}

fn standards_series(sweep: SweepSpec, extra: &str) -> Vec<Series> {
    standards_pairs()
        .into_iter()
        .map(|(class, env)| Series {
            label: format!("{}/{}", class.label(), env.label()),
            scenario: scenario(class, Paradigm::Scattering, "standards", env, extra),
            sweep,
        })
        .collect()
}

/// The curves making up a figure. `fig3` is not a sweep and has none.
pub fn figure_series(id: FigureId) -> Vec<Series> {
    match id {
        FigureId::Fig3 => Vec::new(),
        FigureId::Fig5 => PlatformClass::ALL
            .into_iter()
            .map(|class| Series {
                label: class.label().to_string(),
                scenario: scenario(
                    class,
                    Paradigm::Specular,
                    "log_distance",
                    EnvKind::Urban,
                    "",
                ),
                sweep: spec(SweepVariable::ReflectorCount, 1.0, 1e5, 101, Scale::Log),
            })
            .collect(),
        FigureId::Fig6 => PlatformClass::ALL
            .into_iter()
            .map(|class| Series {
                label: class.label().to_string(),
                scenario: scenario(
                    class,
                    Paradigm::Scattering,
                    "log_distance",
                    EnvKind::Urban,
                    "",
                ),
                sweep: spec(SweepVariable::ReflectorCount, 1.0, 1e8, 81, Scale::Log),
            })
            .collect(),
        FigureId::Fig7 => PlatformClass::ALL
            .into_iter()
            .flat_map(|class| {
                [Paradigm::Specular, Paradigm::Scattering].map(|paradigm| Series {
                    label: format!("{}/{}", class.label(), paradigm.label()),
                    scenario: scenario(class, paradigm, "log_distance", EnvKind::Urban, ""),
                    sweep: spec(SweepVariable::FrequencyGhz, 6.0, 300.0, 41, Scale::Log),
                })
            })
            .collect(),
        FigureId::Fig8 => standards_series(
            spec(SweepVariable::FrequencyGhz, 10.0, 100.0, 91, Scale::Linear),
            "",
        ),
        FigureId::Fig9 => standards_series(
            spec(SweepVariable::RxGainDbi, 0.0, 20.0, 21, Scale::Linear),
            "",
        ),
        FigureId::Fig10 => {
            let nu = spec(
                SweepVariable::NormalizedPlacement,
                0.0,
                2.0,
                201,
                Scale::Linear,
            );
            let mut out = Vec::new();
            for (class, radius, tag) in [
                (PlatformClass::Haps, 50_000.0, "d50km"),
                (PlatformClass::Haps, 10_000.0, "d10km"),
                (PlatformClass::Uav, 2_000.0, "d2km"),
            ] {
                for env in EnvKind::ALL {
                    let mut s = scenario(class, Paradigm::Scattering, "standards", env, "");
                    s.platform.coverage_radius_m = radius;
                    out.push(Series {
                        label: format!("{}-{tag}/{}", class.label(), env.label()),
                        scenario: s,
                        sweep: nu,
                    });
                }
            }
            out
        }
        FigureId::Fig11 => standards_series(
            spec(
                SweepVariable::ThresholdDbm,
                -180.0,
                -40.0,
                141,
                Scale::Linear,
            ),
            "",
        ),
        FigureId::Fig12 => standards_series(
            spec(SweepVariable::CoverageRadius, 10.0, 1e6, 201, Scale::Log),
            r#","threshold_dbm":-115"#,
        ),
    }
}

/// Elevation grid used for the LoS probability plot, degrees.
pub fn fig3_elevations() -> impl Iterator<Item = f64> {
    (10..=90).map(f64::from)
}

/// Renders a figure as CSV.
pub fn run_figure(id: FigureId, opts: &FigureOptions) -> Result<String> {
    let mut out = String::new();
    if id == FigureId::Fig3 {
        out.push_str("series,elevation_deg,p_los\n");
        for env in EnvKind::ALL {
            for elev in fig3_elevations() {
                let _ = writeln!(out, "{},{elev},{}", env.label(), plos_ntn(elev, env));
            }
        }
        return Ok(out);
    }
    out.push_str("series,");
    out.push_str(SWEEP_CSV_HEADER);
    out.push('\n');
    for mut series in figure_series(id) {
        if let Some(seed) = opts.seed {
            series.scenario.seed = seed;
        }
        let rows = run_sweep(&series.scenario, &series.sweep, &opts.gas, opts.eval)?;
        for (x, r) in rows {
            let _ = writeln!(out, "{},{x},{}", series.label, result_fields(&r));
        }
    }
    Ok(out)
}
