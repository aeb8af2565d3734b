//! HAPS and LEO ground links.
//!
//! Loss per condition `y` in {LoS, NLoS} is `FSPL + CL^y + PL_g + PL_s`, and
//! the mean over conditions is weighted by the fitted LoS probability at the
//! link's elevation angle. Shadowing has zero mean and only shows up in the
//! spread.

use super::gas::{gas_attenuation, GasAttenuationProvider};
use super::{mixed_sigma, EnvKind, EnvironmentClass, PathLossBreakdown};
use crate::units::EARTH_RADIUS_M;

/// Fitted LoS probability for an elevation in degrees, clamped to [0, 1].
///
/// The fit yields a percentage, and the urban curve overshoots 100 near the
/// zenith.
pub fn plos_ntn(elev_deg: f64, env: EnvKind) -> f64 {
    let c = env.los_fit();
    ((c.b1 * elev_deg.powf(c.b2) + c.b3) / 100.0).clamp(0.0, 1.0)
}

/// Slant range in metres to a platform at altitude `h_z_m` seen at `elev_deg`
/// over a spherical Earth.
pub fn slant_range_ntn(h_z_m: f64, elev_deg: f64) -> f64 {
    if elev_deg == 90.0 {
        return h_z_m;
    }
    let re = EARTH_RADIUS_M;
    let re_sin = re * elev_deg.to_radians().sin();
    (re_sin * re_sin + h_z_m * h_z_m + 2.0 * h_z_m * re).sqrt() - re_sin
}

/// Free-space loss with frequency in GHz and distance in metres.
pub fn fspl(f_ghz: f64, d3d_m: f64) -> f64 {
    32.45 + 20.0 * f_ghz.log10() + 20.0 * d3d_m.log10()
}

/// Clutter loss in dB; zero under LoS.
pub fn clutter_loss(env: EnvKind, los: bool) -> f64 {
    if los {
        0.0
    } else {
        env.clutter_shadow().cl_nlos_db
    }
}

/// Upper edge of the band where ionospheric scintillation applies, GHz.
pub const IONOSPHERIC_MAX_GHZ: f64 = 6.0;
/// Ionospheric scintillation only matters within this absolute latitude.
pub const IONOSPHERIC_MAX_LATITUDE_DEG: f64 = 20.0;

/// Scintillation loss in dB.
///
/// Up to 6 GHz: ionospheric, `PF / sqrt(2)` with peak-to-peak fluctuation
/// `PF = 1.1 (f/4)^-1.5` dB, and zero outside the +/-20 degree latitude band.
/// Above 6 GHz: tropospheric, `14.7 elev^-1.136`.
pub fn scintillation_loss(f_ghz: f64, elev_deg: f64, latitude_deg: f64) -> f64 {
    if f_ghz <= IONOSPHERIC_MAX_GHZ {
        if latitude_deg.abs() <= IONOSPHERIC_MAX_LATITUDE_DEG {
            let peak_to_peak = 1.1 * (f_ghz / 4.0).powf(-1.5);
            peak_to_peak / std::f64::consts::SQRT_2
        } else {
            0.0
        }
    } else {
        14.7 * elev_deg.powf(-1.136)
    }
}

/// Mean loss of one HAPS/LEO hop with the fitted LoS probability.
pub fn pl_ntn_mean(
    f_ghz: f64,
    elev_deg: f64,
    h_z_m: f64,
    env: EnvironmentClass,
    gas: &GasAttenuationProvider,
) -> PathLossBreakdown {
    pl_ntn_with_plos(
        f_ghz,
        elev_deg,
        h_z_m,
        env,
        gas,
        plos_ntn(elev_deg, env.kind),
    )
}

/// Same as [`pl_ntn_mean`] with the LoS probability forced.
pub fn pl_ntn_with_plos(
    f_ghz: f64,
    elev_deg: f64,
    h_z_m: f64,
    env: EnvironmentClass,
    gas: &GasAttenuationProvider,
    p_los: f64,
) -> PathLossBreakdown {
    let distance_m = slant_range_ntn(h_z_m, elev_deg);
    let free_space = fspl(f_ghz, distance_m);
    let clutter = clutter_loss(env.kind, false);
    let gas_loss = gas_attenuation(gas, f_ghz, distance_m, elev_deg);
    let scint = scintillation_loss(f_ghz, elev_deg, env.latitude_deg);
    let shared = gas_loss.db + scint;

    let los = free_space + clutter_loss(env.kind, true);
    let nlos = free_space + clutter;
    let table = env.kind.clutter_shadow();
    PathLossBreakdown {
        mean_pl_db: p_los * (los + shared) + (1.0 - p_los) * (nlos + shared),
        basic_pl_los_db: los,
        basic_pl_nlos_db: nlos,
        p_los,
        fspl_db: free_space,
        clutter_db: clutter,
        gas_db: gas_loss.db,
        scintillation_db: scint,
        shadow_sigma_db: mixed_sigma(p_los, table.sigma_los_db, table.sigma_nlos_db),
        distance_m,
        elevation_deg: elev_deg,
        gas_clamped: gas_loss.clamped,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn plos_examples() {
        assert_relative_eq!(
            plos_ntn(10.0, EnvKind::DenseUrban),
            0.291_857_498_469_502_5,
            max_relative = 1e-12
        );
        let raw_urban = 9.668 * 90f64.powf(0.547) - 10.58;
        assert!(raw_urban > 100.0);
        assert_eq!(plos_ntn(90.0, EnvKind::Urban), 1.0);
        assert_relative_eq!(
            plos_ntn(90.0, EnvKind::Rural),
            0.970_570_137_724_079_2,
            max_relative = 1e-12
        );
    }

    #[test]
    fn slant_range_examples() {
        assert_eq!(slant_range_ntn(20_000.0, 90.0), 20_000.0);
        assert_relative_eq!(
            slant_range_ntn(500_000.0, 0.0),
            2_573_130.389_234_094,
            max_relative = 1e-12
        );
        // At fixed elevation the curved Earth brings the platform closer than
        // the flat-Earth H / sin(elev).
        let elev = (0.4f64).atan().to_degrees();
        let curved = slant_range_ntn(20_000.0, elev);
        assert_relative_eq!(curved, 53_335.060_090_995_39, max_relative = 1e-9);
        assert!(curved < 20_000f64.hypot(50_000.0));
        assert!(curved > 20_000.0);
    }

    #[test]
    fn fspl_examples() {
        assert_relative_eq!(
            fspl(30.0, 20_000.0),
            148.013_025_007_672_87,
            max_relative = 1e-12
        );
        assert_relative_eq!(fspl(1.0, 1.0), 32.45, max_relative = 1e-15);
        assert_relative_eq!(
            fspl(30.0, 2_000.0) - fspl(30.0, 1_000.0),
            20.0 * 2f64.log10(),
            max_relative = 1e-12
        );
    }

    #[test]
    fn clutter_examples() {
        assert_eq!(clutter_loss(EnvKind::Rural, true), 0.0);
        assert_eq!(clutter_loss(EnvKind::Rural, false), 23.15);
        assert_eq!(clutter_loss(EnvKind::Urban, false), 38.6);
    }

    #[test]
    fn scintillation_examples() {
        assert_relative_eq!(
            scintillation_loss(4.0, 45.0, 10.0),
            0.777_817_459_305_202_3,
            max_relative = 1e-12
        );
        assert_eq!(scintillation_loss(4.0, 45.0, 35.0), 0.0);
        assert_relative_eq!(
            scintillation_loss(30.0, 10.0, 45.0),
            1.074_774_452_720_623_8,
            max_relative = 1e-12
        );
        assert_eq!(scintillation_loss(30.0, 1.0, 0.0), 14.7);
        assert_eq!(
            scintillation_loss(6.0, 5.0, -20.0),
            1.1 * 1.5f64.powf(-1.5) / 2f64.sqrt()
        );
    }

    #[test]
    fn forced_los_collapses_to_los_loss() {
        let env = EnvironmentClass::new(EnvKind::Urban);
        let b = pl_ntn_with_plos(
            30.0,
            40.0,
            20_000.0,
            env,
            &GasAttenuationProvider::Zero,
            1.0,
        );
        assert_relative_eq!(
            b.mean_pl_db,
            b.basic_pl_los_db + b.gas_db + b.scintillation_db,
            max_relative = 1e-15
        );
        assert_eq!(b.shadow_sigma_db, 4.0);
    }

    #[test]
    fn forced_nlos_adds_clutter() {
        let env = EnvironmentClass::new(EnvKind::Urban);
        let b = pl_ntn_with_plos(
            30.0,
            40.0,
            20_000.0,
            env,
            &GasAttenuationProvider::Zero,
            0.0,
        );
        assert_relative_eq!(
            b.mean_pl_db,
            b.fspl_db + 38.6 + b.gas_db + b.scintillation_db,
            max_relative = 1e-15
        );
    }

    #[test]
    fn rural_zenith_hand_evaluation() {
        let env = EnvironmentClass::new(EnvKind::Rural);
        let b = pl_ntn_mean(30.0, 90.0, 20_000.0, env, &GasAttenuationProvider::Zero);
        assert_eq!(b.distance_m, 20_000.0);
        assert_relative_eq!(b.fspl_db, 148.013_025_007_672_87, max_relative = 1e-12);
        assert_relative_eq!(
            b.scintillation_db,
            0.088_572_284_023_909_71,
            max_relative = 1e-10
        );
        assert_relative_eq!(b.mean_pl_db, 148.782_898_603_384_35, max_relative = 1e-12);
    }
}
