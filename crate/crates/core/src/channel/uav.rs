//! Air-to-ground links for low-altitude drones. Links are treated as LoS.

use std::f64::consts::PI;

use super::{EnvKind, PathLossBreakdown};

/// Mean loss in dB. Dense-urban links use the urban formula.
pub fn pl_uav(d3d_m: f64, f_ghz: f64, h_uav_m: f64, env: EnvKind, shadow_db: f64) -> f64 {
    let log_d = d3d_m.log10();
    match env {
        EnvKind::Rural => {
            let slope = (23.9 - 1.8 * h_uav_m.log10()).max(20.0);
            slope * log_d + 20.0 * (40.0 * PI * f_ghz / 3.0).log10() + shadow_db
        }
        EnvKind::Urban | EnvKind::DenseUrban => {
            28.0 + 22.0 * log_d + 20.0 * f_ghz.log10() + shadow_db
        }
    }
}

/// Height-dependent shadowing spread in dB.
pub fn uav_shadow_sigma(h_uav_m: f64, env: EnvKind) -> f64 {
    match env {
        EnvKind::Rural => 4.2 * (-0.0046 * h_uav_m).exp(),
        EnvKind::Urban | EnvKind::DenseUrban => 4.64 * (-0.0066 * h_uav_m).exp(),
    }
}

pub fn uav_link(
    d3d_m: f64,
    f_ghz: f64,
    h_uav_m: f64,
    env: EnvKind,
    elevation_deg: f64,
) -> PathLossBreakdown {
    let loss = pl_uav(d3d_m, f_ghz, h_uav_m, env, 0.0);
    PathLossBreakdown {
        mean_pl_db: loss,
        basic_pl_los_db: loss,
        basic_pl_nlos_db: loss,
        p_los: 1.0,
        fspl_db: loss,
        shadow_sigma_db: uav_shadow_sigma(h_uav_m, env),
        distance_m: d3d_m,
        elevation_deg,
        ..Default::default()
    }
}
