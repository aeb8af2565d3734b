//! Standards-derived stochastic channel models.
//!
//! Three link families are provided:
//!
//! * [`terrestrial`]: urban street-level links to a surface on a building
//!   facade, with a distance-dependent LoS probability.
//! * [`uav`]: air-to-ground links to a low-altitude drone, assumed fully LoS.
//! * [`ntn`]: HAPS / LEO links with elevation-dependent LoS probability,
//!   clutter loss, gas absorption and scintillation.
//!
//! Every model reports its mean loss through a [`PathLossBreakdown`], with
//! shadowing entering as a zero-mean log-normal term characterised by
//! `shadow_sigma_db`.

pub mod gas;
pub mod ntn;
pub mod shadow;
pub mod terrestrial;
pub mod uav;

pub use gas::{gas_attenuation, GasAttenuationProvider, GasLoss, GasTable};
pub use ntn::{
    clutter_loss, fspl, pl_ntn_mean, pl_ntn_with_plos, plos_ntn, scintillation_loss,
    slant_range_ntn,
};
pub use shadow::{sample_shadow, ShadowSampler};
pub use terrestrial::{pl_terrestrial, plos_terrestrial, terrestrial_link};
pub use uav::{pl_uav, uav_link, uav_shadow_sigma};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EnvKind {
    #[serde(rename = "dense_urban", alias = "DenseUrban", alias = "dense-urban")]
    DenseUrban,
    #[serde(rename = "urban", alias = "Urban")]
    Urban,
    #[serde(rename = "rural", alias = "Rural")]
    Rural,
}

impl EnvKind {
    pub const ALL: [EnvKind; 3] = [EnvKind::DenseUrban, EnvKind::Urban, EnvKind::Rural];

    pub fn label(self) -> &'static str {
        match self {
            EnvKind::DenseUrban => "dense_urban",
            EnvKind::Urban => "urban",
            EnvKind::Rural => "rural",
        }
    }

    /// Coefficients of the fitted HAPS/LEO LoS probability curve.
    pub fn los_fit(self) -> LosFitCoefficients {
        let (b1, b2, b3) = match self {
            EnvKind::DenseUrban => (0.04235, 1.644, 27.32),
            EnvKind::Urban => (9.668, 0.547, -10.58),
            EnvKind::Rural => (-99.95, -0.5895, 104.1),
        };
        LosFitCoefficients { b1, b2, b3 }
    }

    /// Ka-band average clutter loss and shadowing spreads.
    pub fn clutter_shadow(self) -> ClutterShadowTable {
        let (cl_nlos_db, sigma_los_db, sigma_nlos_db) = match self {
            EnvKind::DenseUrban => (38.6, 1.75, 14.7),
            EnvKind::Urban => (38.6, 4.0, 6.0),
            EnvKind::Rural => (23.15, 1.15, 10.75),
        };
        ClutterShadowTable {
            cl_nlos_db,
            sigma_los_db,
            sigma_nlos_db,
        }
    }
}

impl std::fmt::Display for EnvKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

/// Latitude used when a scenario does not give one. Outside the +/-20 degree
/// band, so ionospheric scintillation stays off.
pub const DEFAULT_LATITUDE_DEG: f64 = 45.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnvironmentClass {
    pub kind: EnvKind,
    pub latitude_deg: f64,
}

impl EnvironmentClass {
    pub fn new(kind: EnvKind) -> Self {
        EnvironmentClass {
            kind,
            latitude_deg: DEFAULT_LATITUDE_DEG,
        }
    }

    pub fn with_latitude(kind: EnvKind, latitude_deg: f64) -> Result<Self> {
        if !(-90.0..=90.0).contains(&latitude_deg) {
            return Err(Error::validation(
                "environment.latitude_deg",
                format!("must lie in [-90, 90], got {latitude_deg}"),
            ));
        }
        Ok(EnvironmentClass { kind, latitude_deg })
    }
}

/// `P_LoS(%) = b1 * elev^b2 + b3`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LosFitCoefficients {
    pub b1: f64,
    pub b2: f64,
    pub b3: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClutterShadowTable {
    pub cl_nlos_db: f64,
    pub sigma_los_db: f64,
    pub sigma_nlos_db: f64,
}

/// Loss components of one ground-to-platform hop, all in dB.
///
/// `basic_pl_los_db` / `basic_pl_nlos_db` are the conditional losses before
/// shadowing; `mean_pl_db` is their LoS-probability-weighted mean.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PathLossBreakdown {
    pub mean_pl_db: f64,
    pub basic_pl_los_db: f64,
    pub basic_pl_nlos_db: f64,
    pub p_los: f64,
    /// Free-space component (or the LoS basic loss for empirical models).
    pub fspl_db: f64,
    /// Clutter loss applied under NLoS.
    pub clutter_db: f64,
    pub gas_db: f64,
    pub scintillation_db: f64,
    pub shadow_sigma_db: f64,
    pub distance_m: f64,
    pub elevation_deg: f64,
    /// The gas lookup was clamped to the table edge.
    pub gas_clamped: bool,
}

/// Spread of a LoS/NLoS shadowing mixture: `sqrt(P σ_LoS^2 + (1-P) σ_NLoS^2)`.
pub fn mixed_sigma(p_los: f64, sigma_los_db: f64, sigma_nlos_db: f64) -> f64 {
    (p_los * sigma_los_db * sigma_los_db + (1.0 - p_los) * sigma_nlos_db * sigma_nlos_db).sqrt()
}
