//! Street-level urban links between terminals and a facade-mounted surface.

use super::{mixed_sigma, PathLossBreakdown};

/// Shadowing spread of terrestrial LoS links, dB.
pub const SIGMA_LOS_DB: f64 = 4.0;
/// Shadowing spread of terrestrial NLoS links, dB.
pub const SIGMA_NLOS_DB: f64 = 7.8;

/// LoS probability over a ground distance `d2d` (metres).
pub fn plos_terrestrial(d2d_m: f64) -> f64 {
    if d2d_m <= 18.0 {
        1.0
    } else {
        let near = 18.0 / d2d_m;
        near + (-d2d_m / 63.0).exp() * (1.0 - near)
    }
}

/// `(PL_LoS, PL_NLoS)` in dB for a 3-D distance in metres and carrier in GHz.
///
/// `h_x_m` is the height of the lower end (surface or receiver). The NLoS
/// loss is never below the LoS loss.
pub fn pl_terrestrial(d3d_m: f64, f_ghz: f64, h_x_m: f64, shadow_db: f64) -> (f64, f64) {
    let log_d = d3d_m.log10();
    let log_f = f_ghz.log10();
    let los = 28.0 + 22.0 * log_d + 20.0 * log_f + shadow_db;
    let nlos_raw = 13.54 + 39.08 * log_d + 20.0 * log_f - 0.6 * (h_x_m - 1.5) + shadow_db;
    (los, los.max(nlos_raw))
}

/// Mean loss of one terrestrial hop with shadowing averaged out.
pub fn terrestrial_link(d2d_m: f64, d3d_m: f64, f_ghz: f64, h_x_m: f64) -> PathLossBreakdown {
    let p_los = plos_terrestrial(d2d_m);
    let (los, nlos) = pl_terrestrial(d3d_m, f_ghz, h_x_m, 0.0);
    PathLossBreakdown {
        mean_pl_db: p_los * los + (1.0 - p_los) * nlos,
        basic_pl_los_db: los,
        basic_pl_nlos_db: nlos,
        p_los,
        fspl_db: los,
        shadow_sigma_db: mixed_sigma(p_los, SIGMA_LOS_DB, SIGMA_NLOS_DB),
        distance_m: d3d_m,
        elevation_deg: f64::NAN,
        ..Default::default()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn plos_examples() {
        assert_eq!(plos_terrestrial(18.0), 1.0);
        assert_eq!(plos_terrestrial(0.0), 1.0);
        assert_relative_eq!(
            plos_terrestrial(36.0),
            0.782_359_061_003_879_6,
            max_relative = 1e-12
        );
        assert!(plos_terrestrial(1e7) < 1e-5);
        // Continuous at the breakpoint.
        assert!((plos_terrestrial(18.0 + 1e-9) - 1.0).abs() < 1e-9);
    }

    #[test]
    fn pl_examples() {
        let (los, nlos) = pl_terrestrial(100.0, 30.0, 1.5, 0.0);
        assert_relative_eq!(los, 101.542_425_094_393_25, max_relative = 1e-12);
        assert_relative_eq!(nlos, 121.242_425_094_393_24, max_relative = 1e-12);
    }

    #[test]
    fn nlos_clamps_to_los_at_short_range() {
        // High surface lowers the NLoS formula enough to fall below LoS.
        let (los, nlos) = pl_terrestrial(2.0, 30.0, 40.0, 0.0);
        let raw = 13.54 + 39.08 * 2f64.log10() + 20.0 * 30f64.log10() - 0.6 * 38.5;
        assert!(raw < los);
        assert_eq!(nlos, los);
    }

    #[test]
    fn shadow_shifts_both() {
        let (a, b) = pl_terrestrial(300.0, 28.0, 1.5, 0.0);
        let (c, d) = pl_terrestrial(300.0, 28.0, 1.5, 3.0);
        assert_relative_eq!(c - a, 3.0, max_relative = 1e-12);
        assert_relative_eq!(d - b, 3.0, max_relative = 1e-12);
    }

    #[test]
    fn link_mean_is_weighted() {
        let link = terrestrial_link(36.0, 40.0, 30.0, 1.5);
        let expected =
            link.p_los * link.basic_pl_los_db + (1.0 - link.p_los) * link.basic_pl_nlos_db;
        assert_relative_eq!(link.mean_pl_db, expected, max_relative = 1e-15);
        assert!(link.shadow_sigma_db > SIGMA_LOS_DB && link.shadow_sigma_db < SIGMA_NLOS_DB);
    }
}
