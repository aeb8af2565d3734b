//! Received power, noise, rate and outage.
//!
//! Everything here works in the dB domain. Shadowing on the two hops is
//! independent and normal in dB, so the received power is normal with mean
//! `pr_mean_dbm` and spread `sigma_s_db`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use statrs::function::erf::erfc;

use crate::error::{Error, Result};
use crate::units::BOLTZMANN;

/// Received power in dBm through an `n`-reflector surface.
pub fn pr_3gpp_dbm(pt_dbm: f64, gt_dbi: f64, gr_dbi: f64, pl1_db: f64, pl2_db: f64, n: u64) -> f64 {
    pt_dbm + gt_dbi + gr_dbi - pl1_db - pl2_db + 20.0 * (n as f64).log10()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NoiseConfig {
    pub bandwidth_hz: f64,
    pub temperature_k: f64,
    pub noise_figure_db: f64,
}

impl Default for NoiseConfig {
    fn default() -> Self {
        NoiseConfig {
            bandwidth_hz: 100e6,
            temperature_k: 290.0,
            noise_figure_db: 7.0,
        }
    }
}

impl NoiseConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.bandwidth_hz > 0.0 && self.bandwidth_hz.is_finite()) {
            return Err(Error::validation("radio.bandwidth_hz", "must be positive"));
        }
        if !(self.temperature_k > 0.0 && self.temperature_k.is_finite()) {
            return Err(Error::validation("radio.temperature_k", "must be positive"));
        }
        if !(self.noise_figure_db >= 0.0 && self.noise_figure_db.is_finite()) {
            return Err(Error::validation(
                "radio.noise_figure_db",
                "must be at least 0 dB",
            ));
        }
        Ok(())
    }
}

/// How many times the receiver noise figure enters the SNR.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NoiseFigureMode {
    /// `SNR = P_r / (k T B F)`.
    #[default]
    Once,
    /// `SNR = P_r / (k T B F^2)`: the noise power already carries F and the
    /// rate expression divides by F again.
    Twice,
}

/// Thermal noise power `10 log10(k T B F) + 30` in dBm.
pub fn noise_power_dbm(cfg: &NoiseConfig) -> f64 {
    10.0 * (BOLTZMANN * cfg.temperature_k * cfg.bandwidth_hz).log10() + cfg.noise_figure_db + 30.0
}

pub fn snr_db(pr_dbm: f64, cfg: &NoiseConfig, mode: NoiseFigureMode) -> f64 {
    let extra = match mode {
        NoiseFigureMode::Once => 0.0,
        NoiseFigureMode::Twice => cfg.noise_figure_db,
    };
    pr_dbm - noise_power_dbm(cfg) - extra
}

/// Shannon rate in bit/s with the noise figure applied once.
pub fn shannon_rate(pr_dbm: f64, cfg: &NoiseConfig) -> f64 {
    shannon_rate_with(pr_dbm, cfg, NoiseFigureMode::Once)
}

pub fn shannon_rate_with(pr_dbm: f64, cfg: &NoiseConfig, mode: NoiseFigureMode) -> f64 {
    let snr = 10f64.powf(snr_db(pr_dbm, cfg, mode) / 10.0);
    cfg.bandwidth_hz * snr.ln_1p() / std::f64::consts::LN_2
}

/// Spread of the sum of two independent normal shadowing terms.
pub fn sigma_combined(sigma1_db: f64, sigma2_db: f64) -> f64 {
    sigma1_db.hypot(sigma2_db)
}

/// Probability that the received power falls below `threshold_dbm`.
///
/// With `z = (x - P̄_r) / σ_s` this is `1 - ½ erfc(z/√2) = Φ(z)`. A zero
/// spread gives a step: 1 when the threshold lies strictly above the mean.
pub fn outage_probability(pr_mean_dbm: f64, sigma_s_db: f64, threshold_dbm: f64) -> f64 {
    if sigma_s_db == 0.0 {
        return if threshold_dbm > pr_mean_dbm {
            1.0
        } else {
            0.0
        };
    }
    let z = (threshold_dbm - pr_mean_dbm) / sigma_s_db;
    (1.0 - 0.5 * erfc(z / std::f64::consts::SQRT_2)).clamp(0.0, 1.0)
}

/// Fewest draws accepted by [`outage_monte_carlo`].
pub const MIN_MONTE_CARLO_SAMPLES: u64 = 10_000;

/// Draws per independent stream. Fixed so that results do not depend on the
/// number of worker threads.
const MC_CHUNK: u64 = 1 << 16;

/// Empirical outage from `samples` normal draws of the received power.
///
/// Draws are split into fixed-size chunks, each using its own ChaCha stream
/// under `seed`, and evaluated in parallel.
pub fn outage_monte_carlo(
    pr_mean_dbm: f64,
    sigma_s_db: f64,
    threshold_dbm: f64,
    samples: u64,
    seed: u64,
) -> Result<f64> {
    if samples < MIN_MONTE_CARLO_SAMPLES {
        return Err(Error::Domain(format!(
            "Monte Carlo outage needs at least {MIN_MONTE_CARLO_SAMPLES} samples, got {samples}"
        )));
    }
    if sigma_s_db.is_nan() || sigma_s_db < 0.0 {
        return Err(Error::Domain(format!(
            "shadowing spread must be non-negative, got {sigma_s_db}"
        )));
    }
    let chunks = samples.div_ceil(MC_CHUNK);
    let below: u64 = (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(chunk);
            let count = MC_CHUNK.min(samples - chunk * MC_CHUNK);
            (0..count)
                .filter(|_| {
                    let z: f64 = StandardNormal.sample(&mut rng);
                    pr_mean_dbm + sigma_s_db * z < threshold_dbm
                })
                .count() as u64
        })
        .sum();
    Ok(below as f64 / samples as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Feasibility {
    Feasible,
    /// The specular paradigm needs more reflectors than the surface can host.
    NminExceedsNmax,
}

impl Feasibility {
    pub fn is_feasible(self) -> bool {
        self == Feasibility::Feasible
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinkBudgetResult {
    pub pr_mean_dbm: f64,
    pub sigma_s_db: f64,
    pub snr_db: f64,
    pub rate_bps: f64,
    pub outage: f64,
    pub n_used: u64,
    pub feasibility: Feasibility,
}

// ---------------------------------------------------------------------------
// Coverage radius

/// Smallest coverage radius on the search grid, metres.
pub const COVERAGE_GRID_MIN_M: f64 = 10.0;
/// Largest coverage radius on the search grid, metres.
pub const COVERAGE_GRID_MAX_M: f64 = 1.0e6;
pub const COVERAGE_GRID_PER_DECADE: usize = 200;

/// The logarithmic radius grid, 10 m to 1000 km.
pub fn coverage_grid() -> Vec<f64> {
    let decades = (COVERAGE_GRID_MAX_M / COVERAGE_GRID_MIN_M).log10();
    let steps = (decades * COVERAGE_GRID_PER_DECADE as f64).round() as usize;
    (0..=steps)
        .map(|i| COVERAGE_GRID_MIN_M * 10f64.powf(i as f64 / COVERAGE_GRID_PER_DECADE as f64))
        .collect()
}

fn meets_target(outage: f64, sigma_s_db: f64, target: f64) -> bool {
    if target >= 1.0 {
        true
    } else if target <= 0.0 {
        sigma_s_db == 0.0 && outage == 0.0
    } else {
        outage <= target
    }
}

/// Largest coverage radius whose outage at `scenario.threshold_dbm` stays
/// within `outage_target`, with the platform at its optimal placement and the
/// surface filled.
///
/// The grid is scanned for the last qualifying radius and the crossing into
/// the next grid point is refined by bisection. Returns 0 when no radius
/// qualifies.
pub fn max_coverage_radius(
    scenario: &crate::scenario::Scenario,
    gas: &crate::channel::GasAttenuationProvider,
    outage_target: f64,
) -> Result<f64> {
    use crate::budget::{evaluate, EvalOptions};
    use crate::scenario::{Placement, Reflectors};

    let mut base = scenario.clone();
    base.placement = Placement::Optimal;
    base.reflectors = Reflectors::Auto;
    let qualifies = |radius: f64| -> Result<bool> {
        let mut s = base.clone();
        s.platform.coverage_radius_m = radius;
        let r = evaluate(&s, gas, EvalOptions::default())?.result;
        Ok(meets_target(r.outage, r.sigma_s_db, outage_target))
    };

    let grid = coverage_grid();
    let flags = grid
        .par_iter()
        .map(|&radius| qualifies(radius))
        .collect::<Result<Vec<bool>>>()?;
    let Some(last) = flags.iter().rposition(|&ok| ok) else {
        return Ok(0.0);
    };
    if last + 1 == grid.len() {
        return Ok(grid[last]);
    }
    let (mut lo, mut hi) = (grid[last], grid[last + 1]);
    for _ in 0..60 {
        let mid = (lo * hi).sqrt();
        if mid <= lo || mid >= hi {
            break;
        }
        if qualifies(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}
