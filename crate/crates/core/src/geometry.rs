//! Platform placement geometry.
//!
//! Every link is reduced to a collinear picture: the transmitter and receiver
//! sit on the ground `2d` apart, and the surface-carrying platform hovers at
//! altitude `H` with horizontal offset `r` from the transmitter. All of the
//! reflection and channel models consume this reduction.
//!
//! This module also holds the paradigm gating rules (specular distance limit,
//! minimum and maximum reflector counts) and the closed-form optimal
//! placements for both reflection paradigms.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::units::{ceil_count, floor_count};

/// Height of the terrestrial transmitter (base station or gateway), metres.
pub const DEFAULT_TX_HEIGHT_M: f64 = 25.0;

/// Height of the terrestrial receiver, metres.
pub const DEFAULT_RX_HEIGHT_M: f64 = 1.5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PlatformClass {
    #[serde(rename = "terrestrial", alias = "Terrestrial", alias = "TERRESTRIAL")]
    Terrestrial,
    #[serde(rename = "uav", alias = "UAV", alias = "Uav")]
    Uav,
    #[serde(rename = "haps", alias = "HAPS", alias = "Haps")]
    Haps,
    #[serde(rename = "leo", alias = "LEO", alias = "Leo")]
    Leo,
}

impl PlatformClass {
    pub const ALL: [PlatformClass; 4] = [
        PlatformClass::Terrestrial,
        PlatformClass::Uav,
        PlatformClass::Haps,
        PlatformClass::Leo,
    ];

    pub fn is_aerial(self) -> bool {
        !matches!(self, PlatformClass::Terrestrial)
    }

    pub fn label(self) -> &'static str {
        match self {
            PlatformClass::Terrestrial => "terrestrial",
            PlatformClass::Uav => "uav",
            PlatformClass::Haps => "haps",
            PlatformClass::Leo => "leo",
        }
    }

    /// Typical altitude, coverage radius and surface area for the class.
    pub fn preset(self) -> PlatformSpec {
        let (altitude_m, coverage_radius_m, rss_area_m2) = match self {
            PlatformClass::Terrestrial => (5.0, 500.0, 5.0 * 10.0),
            PlatformClass::Uav => (200.0, 2_000.0, 0.25 * 0.25),
            PlatformClass::Haps => (20_000.0, 50_000.0, 40.0 * 20.0),
            PlatformClass::Leo => (500_000.0, 500_000.0, 5.0 * 10.0),
        };
        PlatformSpec {
            class: self,
            altitude_m,
            coverage_radius_m,
            rss_area_m2,
        }
    }
}

impl std::fmt::Display for PlatformClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

impl std::str::FromStr for PlatformClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "terrestrial" => Ok(PlatformClass::Terrestrial),
            "uav" => Ok(PlatformClass::Uav),
            "haps" => Ok(PlatformClass::Haps),
            "leo" => Ok(PlatformClass::Leo),
            other => Err(Error::validation(
                "platform",
                format!(
                    "unknown platform class `{other}` (expected terrestrial, uav, haps or leo)"
                ),
            )),
        }
    }
}

/// A surface-carrying platform: altitude `H`, coverage radius `d` and the
/// area `A_t` reserved for reflectors.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlatformSpec {
    pub class: PlatformClass,
    pub altitude_m: f64,
    pub coverage_radius_m: f64,
    pub rss_area_m2: f64,
}

impl PlatformSpec {
    pub fn validate(&self) -> Result<()> {
        positive("platform.altitude_m", self.altitude_m)?;
        positive("platform.coverage_radius_m", self.coverage_radius_m)?;
        positive("platform.rss_area_m2", self.rss_area_m2)?;
        Ok(())
    }
}

fn positive(field: &str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::validation(
            field,
            format!("must be a finite value > 0, got {v}"),
        ))
    }
}

/// Collinear Tx / platform / Rx geometry.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkGeometry {
    /// Platform altitude `H`.
    pub altitude_m: f64,
    /// Half of the Tx-Rx separation, `d`.
    pub half_span_m: f64,
    /// Horizontal platform-to-Tx distance `r`, in `[0, 2d]`.
    pub tx_offset_m: f64,
    pub tx_height_m: f64,
    pub rx_height_m: f64,
}

impl LinkGeometry {
    pub fn new(altitude_m: f64, half_span_m: f64, tx_offset_m: f64) -> Result<Self> {
        let geom = LinkGeometry {
            altitude_m,
            half_span_m,
            tx_offset_m,
            tx_height_m: DEFAULT_TX_HEIGHT_M,
            rx_height_m: DEFAULT_RX_HEIGHT_M,
        };
        geom.validate()?;
        Ok(geom)
    }

    pub fn with_terminal_heights(mut self, tx_height_m: f64, rx_height_m: f64) -> Self {
        self.tx_height_m = tx_height_m;
        self.rx_height_m = rx_height_m;
        self
    }

    /// Reduces arbitrary 3-D positions (x, y, z) to the collinear form.
    ///
    /// The platform is projected onto the Tx-Rx ground line; any cross-track
    /// offset `c` is folded into an effective altitude `sqrt(H^2 + c^2)`, which
    /// leaves both endpoint distances unchanged.
    pub fn from_positions(tx: [f64; 3], rx: [f64; 3], platform: [f64; 3]) -> Result<Self> {
        let (ux, uy) = (rx[0] - tx[0], rx[1] - tx[1]);
        let span = ux.hypot(uy);
        if span.is_nan() || span <= 0.0 {
            return Err(Error::Domain(
                "transmitter and receiver share a ground position".into(),
            ));
        }
        let (ux, uy) = (ux / span, uy / span);
        let (px, py) = (platform[0] - tx[0], platform[1] - tx[1]);
        let along = px * ux + py * uy;
        let cross = -px * uy + py * ux;
        let geom = LinkGeometry {
            altitude_m: platform[2].hypot(cross),
            half_span_m: span / 2.0,
            tx_offset_m: along,
            tx_height_m: tx[2],
            rx_height_m: rx[2],
        };
        geom.validate()?;
        Ok(geom)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.altitude_m.is_finite() && self.altitude_m >= 0.0) {
            return Err(Error::Domain(format!(
                "altitude must be >= 0, got {}",
                self.altitude_m
            )));
        }
        if !(self.half_span_m.is_finite() && self.half_span_m > 0.0) {
            return Err(Error::Domain(format!(
                "half span must be > 0, got {}",
                self.half_span_m
            )));
        }
        let span = 2.0 * self.half_span_m;
        if !(self.tx_offset_m >= 0.0 && self.tx_offset_m <= span) {
            return Err(Error::Domain(format!(
                "platform offset {} m lies outside the Tx-Rx segment [0, {span}]",
                self.tx_offset_m
            )));
        }
        Ok(())
    }

    /// Horizontal platform-to-Rx distance, `2d - r`.
    pub fn rx_offset_m(&self) -> f64 {
        2.0 * self.half_span_m - self.tx_offset_m
    }

    /// Normalised Rx-platform distance `nu = 2 - r/d`.
    pub fn normalized_placement(&self) -> f64 {
        2.0 - self.tx_offset_m / self.half_span_m
    }

    pub fn endpoint_distances(&self) -> (f64, f64) {
        endpoint_distances(self)
    }
}

/// Platform-to-Tx and platform-to-Rx distances `(d_t, d_r)`.
pub fn endpoint_distances(geom: &LinkGeometry) -> (f64, f64) {
    let h = geom.altitude_m;
    (h.hypot(geom.tx_offset_m), h.hypot(geom.rx_offset_m()))
}

/// Elevation of a platform seen from the ground, in degrees within (0, 90].
pub fn elevation_angle(altitude_m: f64, horizontal_m: f64) -> f64 {
    altitude_m.atan2(horizontal_m).to_degrees()
}

/// Largest Tx/Rx-to-surface distance at which the surface still acts as a
/// mirror: `2 A_t / λ`.
pub fn specular_limit_distance(rss_area_m2: f64, wavelength_m: f64) -> Result<f64> {
    if wavelength_m.is_nan() || wavelength_m <= 0.0 {
        return Err(Error::Domain(format!(
            "wavelength must be > 0, got {wavelength_m}"
        )));
    }
    Ok(2.0 * rss_area_m2 / wavelength_m)
}

/// Fewest 10λ x 10λ reflectors that keep a distance `D` inside the specular
/// limit: `ceil(D / (200 λ))`.
///
/// `D` should be the farther of the two endpoint distances, since the limit
/// has to hold on both hops.
pub fn n_min_specular(max_endpoint_distance_m: f64, wavelength_m: f64) -> u64 {
    ceil_count(max_endpoint_distance_m / (200.0 * wavelength_m))
}

/// Most reflectors of the given unit size that fit on `A_t`.
pub fn n_max(rss_area_m2: f64, unit: &ReflectorUnitSpec, wavelength_m: f64) -> u64 {
    floor_count(n_max_continuous(rss_area_m2, unit, wavelength_m))
}

/// `A_t / (c1 c2 λ^2)` before rounding down.
pub fn n_max_continuous(rss_area_m2: f64, unit: &ReflectorUnitSpec, wavelength_m: f64) -> f64 {
    rss_area_m2 / unit.area_m2(wavelength_m)
}

/// Specular equivalent path distance `d_t + d_r` for a platform at offset `r`.
pub fn specular_path_distance(altitude_m: f64, half_span_m: f64, r: f64) -> f64 {
    altitude_m.hypot(r) + altitude_m.hypot(2.0 * half_span_m - r)
}

/// Scattering equivalent distance `d_t * d_r` for a platform at offset `r`.
pub fn scattering_path_product(altitude_m: f64, half_span_m: f64, r: f64) -> f64 {
    altitude_m.hypot(r) * altitude_m.hypot(2.0 * half_span_m - r)
}

/// Offset that minimises `d_t + d_r`: the perpendicular bisector, `r* = d`.
pub fn optimal_placement_specular(_altitude_m: f64, half_span_m: f64) -> f64 {
    half_span_m
}

/// Minimisers of `d_t * d_r` along the Tx-Rx segment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ScatteringOptimum {
    /// `d <= H`: the single optimum is the midpoint.
    Midpoint(f64),
    /// `d > H`: two mirror-image optima, one near each terminal.
    NearEndpoints { near_tx: f64, near_rx: f64 },
}

impl ScatteringOptimum {
    pub fn positions(&self) -> Vec<f64> {
        match *self {
            ScatteringOptimum::Midpoint(r) => vec![r],
            ScatteringOptimum::NearEndpoints { near_tx, near_rx } => vec![near_tx, near_rx],
        }
    }
}

pub fn optimal_placement_scattering(altitude_m: f64, half_span_m: f64) -> ScatteringOptimum {
    let (h, d) = (altitude_m, half_span_m);
    if d > h {
        let q = ((d - h) * (d + h)).sqrt();
        ScatteringOptimum::NearEndpoints {
            near_tx: d - q,
            near_rx: d + q,
        }
    } else {
        // d == H is a double root at the midpoint.
        ScatteringOptimum::Midpoint(d)
    }
}

/// `d_t * d_r` at the scattering optimum: `H^2 + d^2` when `d <= H`, else `2Hd`.
pub fn equivalent_distance_scattering_opt(altitude_m: f64, half_span_m: f64) -> f64 {
    let (h, d) = (altitude_m, half_span_m);
    if d <= h {
        h * h + d * d
    } else {
        2.0 * h * d
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum UnitRegime {
    /// Large units (10λ), specular paradigm.
    #[serde(rename = "lrss", alias = "LRSS")]
    Lrss,
    /// Small units (0.1λ-0.2λ), scattering paradigm.
    #[serde(rename = "srss", alias = "SRSS")]
    Srss,
}

/// Reflector unit size as multiples of the wavelength: `c1 λ x c2 λ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReflectorUnitSpec {
    pub c1: f64,
    pub c2: f64,
    pub regime: UnitRegime,
}

pub const LRSS_SCALE: f64 = 10.0;
pub const SRSS_MIN_SCALE: f64 = 0.1;
pub const SRSS_MAX_SCALE: f64 = 0.2;

impl ReflectorUnitSpec {
    pub fn lrss() -> Self {
        ReflectorUnitSpec {
            c1: LRSS_SCALE,
            c2: LRSS_SCALE,
            regime: UnitRegime::Lrss,
        }
    }

    pub fn srss(c1: f64, c2: f64) -> Result<Self> {
        for (field, c) in [("c1", c1), ("c2", c2)] {
            if !(SRSS_MIN_SCALE..=SRSS_MAX_SCALE).contains(&c) {
                return Err(Error::validation(
                    format!("radio.{field}"),
                    format!(
                        "small (scattering) reflector units must measure between 0.1λ and 0.2λ, got {c}λ"
                    ),
                ));
            }
        }
        Ok(ReflectorUnitSpec {
            c1,
            c2,
            regime: UnitRegime::Srss,
        })
    }

    /// Builds a unit for the requested regime, rejecting sizes outside it.
    pub fn for_regime(regime: UnitRegime, c1: f64, c2: f64) -> Result<Self> {
        match regime {
            UnitRegime::Srss => Self::srss(c1, c2),
            UnitRegime::Lrss => {
                for (field, c) in [("c1", c1), ("c2", c2)] {
                    if c != LRSS_SCALE {
                        return Err(Error::validation(
                            format!("radio.{field}"),
                            format!("large (specular) reflector units must measure 10λ, got {c}λ"),
                        ));
                    }
                }
                Ok(Self::lrss())
            }
        }
    }

    /// Physical unit area `c1 c2 λ^2`.
    pub fn area_m2(&self, wavelength_m: f64) -> f64 {
        self.c1 * self.c2 * wavelength_m * wavelength_m
    }
}
