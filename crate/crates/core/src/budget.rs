//! End-to-end link budget for one scenario.

use serde::Serialize;

use crate::channel::{
    pl_ntn_mean, terrestrial_link, uav_link, GasAttenuationProvider, PathLossBreakdown,
};
use crate::error::Result;
use crate::geometry::{
    elevation_angle, n_max, n_min_specular, optimal_placement_scattering, specular_limit_distance,
    LinkGeometry, PlatformClass, DEFAULT_RX_HEIGHT_M, DEFAULT_TX_HEIGHT_M,
};
use crate::metrics::{
    noise_power_dbm, outage_probability, pr_3gpp_dbm, shannon_rate_with, sigma_combined, snr_db,
    Feasibility, LinkBudgetResult, NoiseFigureMode,
};
use crate::reflection::{
    pr_max_scattering, pr_scattering_aerial, pr_scattering_terrestrial, pr_specular_aerial,
    pr_specular_terrestrial, LogDistanceParams, MaxPowerGeometry, Paradigm,
};
use crate::scenario::{ChannelModel, Placement, Reflectors, Scenario};
use crate::units::{db_to_linear, dbm_to_watts, watts_to_dbm};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EvalOptions {
    /// Reproduce the rate expression literally, with the noise figure
    /// applied twice.
    pub strict_paper: bool,
}

impl EvalOptions {
    pub fn noise_figure_mode(&self) -> NoiseFigureMode {
        if self.strict_paper {
            NoiseFigureMode::Twice
        } else {
            NoiseFigureMode::Once
        }
    }
}

/// Everything computed for one scenario, including the intermediate
/// quantities shown in the CLI report.
#[derive(Debug, Clone, Serialize)]
pub struct BudgetReport {
    pub result: LinkBudgetResult,
    pub wavelength_m: f64,
    /// Horizontal platform-to-Tx offset `r`.
    pub placement_m: f64,
    /// `nu = 2 - r/d`.
    pub normalized_placement: f64,
    pub tx_distance_m: f64,
    pub rx_distance_m: f64,
    pub n_max: u64,
    /// Specular paradigm only.
    pub n_min: Option<u64>,
    /// Specular paradigm only.
    pub specular_limit_m: Option<f64>,
    pub noise_dbm: f64,
    /// Standards model only.
    #[serde(skip)]
    pub tx_link: Option<PathLossBreakdown>,
    #[serde(skip)]
    pub rx_link: Option<PathLossBreakdown>,
}

/// Evaluates the scenario at its configured (or optimal) placement.
pub fn evaluate(
    s: &Scenario,
    gas: &GasAttenuationProvider,
    opts: EvalOptions,
) -> Result<BudgetReport> {
    s.validate()?;
    let lambda = s.radio.wavelength_m();
    let unit = s.unit()?;
    let h = s.platform.altitude_m;
    let d = s.platform.coverage_radius_m;
    let area = s.platform.rss_area_m2;
    let n_cap = n_max(area, &unit, lambda);
    let n = match s.reflectors {
        Reflectors::Auto => n_cap,
        Reflectors::Count(n) => n,
    };

    let candidates = match s.placement {
        Placement::Fixed(r) => vec![r],
        Placement::Optimal => candidate_placements(s),
    };

    let mut best: Option<Evaluated> = None;
    for r in candidates {
        let e = evaluate_at(s, gas, r, n)?;
        if best.as_ref().is_none_or(|b| e.pr_dbm > b.pr_dbm) {
            best = Some(e);
        }
    }
    let e = best.expect("at least one placement candidate");

    let geom = LinkGeometry::new(h, d, e.r)?;
    let (d_t, d_r) = geom.endpoint_distances();
    let (n_min, specular_limit_m, feasibility) = match s.paradigm {
        Paradigm::Specular => {
            // The terrestrial surface hangs on a facade between the two
            // terminals, so its binding distance is the half-span.
            let binding = match s.platform.class {
                PlatformClass::Terrestrial => d,
                _ => d_t.max(d_r),
            };
            let n_min = n_min_specular(binding, lambda);
            let verdict = if n_min <= n_cap {
                Feasibility::Feasible
            } else {
                Feasibility::NminExceedsNmax
            };
            (
                Some(n_min),
                Some(specular_limit_distance(area, lambda)?),
                verdict,
            )
        }
        Paradigm::Scattering => (None, None, Feasibility::Feasible),
    };

    let noise = s.radio.noise();
    let mode = opts.noise_figure_mode();
    let result = LinkBudgetResult {
        pr_mean_dbm: e.pr_dbm,
        sigma_s_db: e.sigma_db,
        snr_db: snr_db(e.pr_dbm, &noise, mode),
        rate_bps: shannon_rate_with(e.pr_dbm, &noise, mode),
        outage: outage_probability(e.pr_dbm, e.sigma_db, s.threshold_dbm),
        n_used: n,
        feasibility,
    };
    Ok(BudgetReport {
        result,
        wavelength_m: lambda,
        placement_m: e.r,
        normalized_placement: geom.normalized_placement(),
        tx_distance_m: d_t,
        rx_distance_m: d_r,
        n_max: n_cap,
        n_min,
        specular_limit_m,
        noise_dbm: noise_power_dbm(&noise),
        tx_link: e.links.map(|l| l.0),
        rx_link: e.links.map(|l| l.1),
    })
}

/// Placements tried under `Placement::Optimal`. A facade surface sits midway;
/// airborne mirrors hover over the midpoint; airborne scatterers try both
/// endpoint-side optima and keep the stronger one.
pub fn candidate_placements(s: &Scenario) -> Vec<f64> {
    let h = s.platform.altitude_m;
    let d = s.platform.coverage_radius_m;
    match (s.platform.class, s.paradigm) {
        (PlatformClass::Terrestrial, _) | (_, Paradigm::Specular) => vec![d],
        (_, Paradigm::Scattering) => optimal_placement_scattering(h, d).positions(),
    }
}

struct Evaluated {
    r: f64,
    pr_dbm: f64,
    sigma_db: f64,
    links: Option<(PathLossBreakdown, PathLossBreakdown)>,
}

fn evaluate_at(s: &Scenario, gas: &GasAttenuationProvider, r: f64, n: u64) -> Result<Evaluated> {
    match s.channel {
        ChannelModel::LogDistance {
            alpha,
            ref_distance_m,
        } => {
            let p = LogDistanceParams {
                tx_power_w: dbm_to_watts(s.radio.pt_dbm),
                tx_gain: db_to_linear(s.radio.gt_dbi),
                rx_gain: db_to_linear(s.radio.gr_dbi),
                wavelength_m: s.radio.wavelength_m(),
                ref_distance_m,
                path_loss_exp: alpha,
            };
            p.validate()?;
            let pr_w = log_distance_power(s, &p, r, n)?;
            Ok(Evaluated {
                r,
                pr_dbm: watts_to_dbm(pr_w),
                sigma_db: 0.0,
                links: None,
            })
        }
        ChannelModel::Standards => {
            let (tx, rx) = standards_links(s, gas, r);
            Ok(Evaluated {
                r,
                pr_dbm: pr_3gpp_dbm(
                    s.radio.pt_dbm,
                    s.radio.gt_dbi,
                    s.radio.gr_dbi,
                    tx.mean_pl_db,
                    rx.mean_pl_db,
                    n,
                ),
                sigma_db: sigma_combined(tx.shadow_sigma_db, rx.shadow_sigma_db),
                links: Some((tx, rx)),
            })
        }
    }
}

fn log_distance_power(s: &Scenario, p: &LogDistanceParams, r: f64, n: u64) -> Result<f64> {
    let h = s.platform.altitude_m;
    let d = s.platform.coverage_radius_m;
    let (d_t, d_r) = LinkGeometry::new(h, d, r)?.endpoint_distances();
    let aerial = s.platform.class.is_aerial();
    Ok(match s.paradigm {
        Paradigm::Specular if aerial => pr_specular_aerial(p, d_t, d_r, n),
        Paradigm::Specular => pr_specular_terrestrial(p, d, n),
        Paradigm::Scattering if s.reflectors == Reflectors::Auto => {
            // A full surface makes the power independent of the carrier, so
            // use the closed form with the continuous reflector count.
            let unit = s.unit()?;
            let geom = if aerial && s.placement == Placement::Optimal {
                MaxPowerGeometry::Aerial {
                    altitude_m: h,
                    half_span_m: d,
                }
            } else {
                MaxPowerGeometry::Terrestrial { d_t, d_r }
            };
            pr_max_scattering(p, s.platform.rss_area_m2, &unit, geom)
        }
        Paradigm::Scattering if aerial => pr_scattering_aerial(p, d_t * d_r, n),
        Paradigm::Scattering => pr_scattering_terrestrial(p, d_t, d_r, n),
    })
}

/// Tx-side and Rx-side hop losses for the standards models.
pub fn standards_links(
    s: &Scenario,
    gas: &GasAttenuationProvider,
    r: f64,
) -> (PathLossBreakdown, PathLossBreakdown) {
    let h = s.platform.altitude_m;
    let d = s.platform.coverage_radius_m;
    let f = s.radio.f_ghz;
    let (h_tx, h_rx) = (DEFAULT_TX_HEIGHT_M, DEFAULT_RX_HEIGHT_M);
    let (near, far) = (r, 2.0 * d - r);
    match s.platform.class {
        PlatformClass::Terrestrial => (
            terrestrial_link(near, near.hypot(h_tx - h), f, h),
            terrestrial_link(far, far.hypot(h - h_rx), f, h_rx),
        ),
        PlatformClass::Uav => (
            uav_link(
                near.hypot(h - h_tx),
                f,
                h,
                s.env.kind,
                elevation_angle(h - h_tx, near),
            ),
            uav_link(
                far.hypot(h - h_rx),
                f,
                h,
                s.env.kind,
                elevation_angle(h - h_rx, far),
            ),
        ),
        PlatformClass::Haps | PlatformClass::Leo => (
            pl_ntn_mean(f, elevation_angle(h - h_tx, near), h, s.env, gas),
            pl_ntn_mean(f, elevation_angle(h - h_rx, far), h, s.env, gas),
        ),
    }
}
