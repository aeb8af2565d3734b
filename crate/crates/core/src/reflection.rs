//! Received power through a reflecting surface under the log-distance model.
//!
//! Two regimes are covered. In the specular regime the surface behaves like a
//! mirror and the loss follows the summed path `d_t + d_r`. In the scattering
//! regime every unit re-radiates, so the loss follows the product `d_t * d_r`.
//! Closed forms assume ideal units (unit reflection, perfect phase alignment)
//! and equal per-unit distances. [`pr_reflector_sum_oracle`] evaluates the
//! coherent per-unit sum without those simplifications and is the reference
//! the closed forms are tested against.
//!
//! All powers are linear watts.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{equivalent_distance_scattering_opt, ReflectorUnitSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Paradigm {
    #[serde(rename = "specular")]
    Specular,
    #[serde(rename = "scattering")]
    Scattering,
}

impl Paradigm {
    pub fn label(self) -> &'static str {
        match self {
            Paradigm::Specular => "specular",
            Paradigm::Scattering => "scattering",
        }
    }
}

/// Log-distance link parameters. `path_loss_exp` is `alpha = 2 gamma`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogDistanceParams {
    pub tx_power_w: f64,
    pub tx_gain: f64,
    pub rx_gain: f64,
    pub wavelength_m: f64,
    pub ref_distance_m: f64,
    pub path_loss_exp: f64,
}

impl LogDistanceParams {
    /// Free-space parameters (alpha = 2, d0 = 1 m) with isotropic antennas.
    pub fn free_space(tx_power_w: f64, wavelength_m: f64) -> Self {
        LogDistanceParams {
            tx_power_w,
            tx_gain: 1.0,
            rx_gain: 1.0,
            wavelength_m,
            ref_distance_m: 1.0,
            path_loss_exp: 2.0,
        }
    }

    pub fn with_exponent(mut self, path_loss_exp: f64) -> Self {
        self.path_loss_exp = path_loss_exp;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let checks = [
            ("tx_power_w", self.tx_power_w > 0.0),
            ("tx_gain", self.tx_gain > 0.0),
            ("rx_gain", self.rx_gain > 0.0),
            ("wavelength_m", self.wavelength_m > 0.0),
            ("ref_distance_m", self.ref_distance_m > 0.0),
            ("path_loss_exp", self.path_loss_exp >= 2.0),
        ];
        match checks.iter().find(|(_, ok)| !ok) {
            Some((name, _)) => Err(Error::Domain(format!(
                "log-distance parameter `{name}` out of range"
            ))),
            None => Ok(()),
        }
    }

    fn eirp_gain(&self) -> f64 {
        self.tx_power_w * self.tx_gain * self.rx_gain
    }

    fn gamma(&self) -> f64 {
        self.path_loss_exp / 2.0
    }
}

fn quarter_wave(wavelength_m: f64) -> f64 {
    wavelength_m / (4.0 * PI)
}

/// Terrestrial mirror-like surface at the midpoint of a `2d` link, including
/// the direct path through the `(1 + N)^2` term.
pub fn pr_specular_terrestrial(p: &LogDistanceParams, half_span_m: f64, n: u64) -> f64 {
    let alpha = p.path_loss_exp;
    let k = quarter_wave(p.wavelength_m);
    let coherent = 1.0 + n as f64;
    p.eirp_gain() * k * k * p.ref_distance_m.powf(alpha - 2.0) * coherent * coherent
        / (2.0 * half_span_m).powf(alpha)
}

/// Terrestrial scattering surface; the direct link is not modelled.
pub fn pr_scattering_terrestrial(p: &LogDistanceParams, d_t: f64, d_r: f64, n: u64) -> f64 {
    let alpha = p.path_loss_exp;
    let k = quarter_wave(p.wavelength_m);
    let n = n as f64;
    p.eirp_gain() * k.powi(4) * p.ref_distance_m.powf(2.0 * alpha - 4.0) * n * n
        / (d_t * d_r).powf(alpha)
}

/// Aerial mirror-like surface. Aerial hops are line-of-sight, so the exponent
/// is fixed at 2 regardless of `p.path_loss_exp`, and there is no direct path.
pub fn pr_specular_aerial(p: &LogDistanceParams, d_t: f64, d_r: f64, n: u64) -> f64 {
    let k = quarter_wave(p.wavelength_m);
    let n = n as f64;
    let path = d_t + d_r;
    p.eirp_gain() * k * k * n * n / (path * path)
}

/// Aerial scattering surface given the equivalent distance `d_t * d_r`
/// (typically taken at the optimal placement).
pub fn pr_scattering_aerial(p: &LogDistanceParams, d_sc: f64, n: u64) -> f64 {
    let k = quarter_wave(p.wavelength_m);
    let n = n as f64;
    p.eirp_gain() * k.powi(4) * n * n / (d_sc * d_sc)
}

/// State of one reflector unit for the per-unit oracle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReflectorState {
    /// Amplitude reflection factor, 0..=1.
    pub reflection_loss: f64,
    pub incident_phase_rad: f64,
    pub applied_phase_rad: f64,
    pub tx_distance_m: f64,
    pub rx_distance_m: f64,
    pub tx_channel_phase_rad: f64,
    pub rx_channel_phase_rad: f64,
}

impl ReflectorState {
    /// Lossless unit with its phase matched to the incoming wave.
    pub fn ideal(tx_distance_m: f64, rx_distance_m: f64) -> Self {
        ReflectorState {
            reflection_loss: 1.0,
            incident_phase_rad: 0.0,
            applied_phase_rad: 0.0,
            tx_distance_m,
            rx_distance_m,
            tx_channel_phase_rad: 0.0,
            rx_channel_phase_rad: 0.0,
        }
    }

    fn net_phase(&self, mode: Paradigm) -> f64 {
        match mode {
            Paradigm::Specular => self.incident_phase_rad + self.applied_phase_rad,
            Paradigm::Scattering => {
                self.applied_phase_rad - self.tx_channel_phase_rad - self.rx_channel_phase_rad
            }
        }
    }
}

/// Received power from the coherent sum over individual reflector units.
///
/// Each unit contributes a complex channel coefficient; the optional direct
/// path of length `direct_link_d` adds the plain log-distance coefficient.
/// Nothing is assumed about equal distances or phase alignment.
pub fn pr_reflector_sum_oracle(
    p: &LogDistanceParams,
    reflectors: &[ReflectorState],
    mode: Paradigm,
    direct_link_d: Option<f64>,
) -> f64 {
    let gamma = p.gamma();
    let d0 = p.ref_distance_m;
    let hop = p.wavelength_m / (4.0 * PI * d0);

    let mut field = Complex64::new(0.0, 0.0);
    if let Some(d_l) = direct_link_d {
        field += hop * (d0 / d_l).powf(gamma);
    }
    for unit in reflectors {
        let phasor = Complex64::from_polar(unit.reflection_loss, -unit.net_phase(mode));
        let scale = match mode {
            Paradigm::Specular => {
                hop * d0.powf(gamma) / (unit.tx_distance_m + unit.rx_distance_m).powf(gamma)
            }
            Paradigm::Scattering => {
                hop * hop * d0.powf(2.0 * gamma)
                    / (unit.tx_distance_m * unit.rx_distance_m).powf(gamma)
            }
        };
        field += phasor * scale;
    }
    p.eirp_gain() * field.norm_sqr()
}

/// Distances entering the area-limited maximum power.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MaxPowerGeometry {
    /// Terrestrial surface with its own exponent from the link parameters.
    Terrestrial { d_t: f64, d_r: f64 },
    /// Aerial platform at the scattering optimum.
    Aerial { altitude_m: f64, half_span_m: f64 },
}

/// Scattering power when the surface is filled with `A_t / (c1 c2 λ^2)` units.
///
/// Substituting that count cancels the wavelength, so the result depends only
/// on area, unit scale and geometry. The wavelength in `p` is not read.
pub fn pr_max_scattering(
    p: &LogDistanceParams,
    rss_area_m2: f64,
    unit: &ReflectorUnitSpec,
    geometry: MaxPowerGeometry,
) -> f64 {
    let fill = rss_area_m2 / (unit.c1 * unit.c2);
    let base = p.eirp_gain() / (4.0 * PI).powi(4) * fill * fill;
    match geometry {
        MaxPowerGeometry::Terrestrial { d_t, d_r } => {
            let alpha = p.path_loss_exp;
            base * p.ref_distance_m.powf(2.0 * alpha - 4.0) / (d_t * d_r).powf(alpha)
        }
        MaxPowerGeometry::Aerial {
            altitude_m,
            half_span_m,
        } => {
            let d_sc = equivalent_distance_scattering_opt(altitude_m, half_span_m);
            base / (d_sc * d_sc)
        }
    }
}
