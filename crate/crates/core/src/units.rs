//! Unit conversions shared by every model.
//!
//! Closed-form powers are carried in linear watts; decibel conversion happens
//! only when a result is assembled for presentation or when a standards model
//! is natively expressed in dB.

/// Propagation speed used for λ = c / f. The rounded value keeps λ = 0.01 m
/// at 30 GHz, which the reflector-count tables are built on.
pub const SPEED_OF_LIGHT: f64 = 3.0e8;

/// Boltzmann constant in J/K, at the precision used for noise budgets.
pub const BOLTZMANN: f64 = 1.38e-23;

/// Mean Earth radius in metres.
pub const EARTH_RADIUS_M: f64 = 6_371_000.0;

/// Wavelength in metres for a carrier in GHz.
#[inline]
pub fn wavelength_m(f_ghz: f64) -> f64 {
    SPEED_OF_LIGHT / (f_ghz * 1e9)
}

/// Carrier frequency in GHz for a wavelength in metres.
#[inline]
pub fn frequency_ghz(wavelength_m: f64) -> f64 {
    SPEED_OF_LIGHT / wavelength_m / 1e9
}

#[inline]
pub fn watts_to_dbm(p_w: f64) -> f64 {
    10.0 * p_w.log10() + 30.0
}

#[inline]
pub fn dbm_to_watts(p_dbm: f64) -> f64 {
    10f64.powf((p_dbm - 30.0) / 10.0)
}

#[inline]
pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

#[inline]
pub fn linear_to_db(x: f64) -> f64 {
    10.0 * x.log10()
}

/// Relative tolerance used when snapping a ratio onto an integer before
/// rounding. Ratios such as 800 / 0.01 land a few ulps below the integer.
const INTEGER_SNAP_REL: f64 = 1e-9;

fn snap(x: f64) -> f64 {
    let nearest = x.round();
    if (x - nearest).abs() <= INTEGER_SNAP_REL * nearest.abs().max(1.0) {
        nearest
    } else {
        x
    }
}

/// `ceil` that ignores floating-point dust just above an integer.
pub fn ceil_count(x: f64) -> u64 {
    if x.is_nan() || x <= 0.0 {
        return 0;
    }
    snap(x).ceil() as u64
}

/// `floor` that ignores floating-point dust just below an integer.
pub fn floor_count(x: f64) -> u64 {
    if x.is_nan() || x <= 0.0 {
        return 0;
    }
    snap(x).floor() as u64
}
