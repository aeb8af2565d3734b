//! Scenario documents.
//!
//! A scenario is a JSON object. Only `platform` is required; every other
//! field falls back to a default that depends on the platform, paradigm and
//! channel model. Unknown fields are rejected.
//!
//! ```json
//! {
//!   "schema": 1,
//!   "platform": "haps",
//!   "radio": { "f_ghz": 30, "gr_dbi": 0 },
//!   "environment": { "kind": "rural", "latitude_deg": 45 },
//!   "paradigm": "scattering",
//!   "channel": "standards",
//!   "placement": "optimal",
//!   "reflectors": "auto",
//!   "threshold_dbm": -115,
//!   "gas": "zero",
//!   "seed": 0
//! }
//! ```
//!
//! Field forms:
//!
//! * `platform`: a class name (`terrestrial`, `uav`, `haps`, `leo`) or
//!   `{"class": ..., "altitude_m": ..., "coverage_radius_m": ..., "rss_area_m2": ...}`
//!   where the numeric fields override the class preset.
//! * `environment`: `dense_urban`, `urban`, `rural`, or `{"kind": ..., "latitude_deg": ...}`.
//! * `channel`: `standards`, `log_distance`, or
//!   `{"model": "log_distance", "alpha": 4, "ref_distance_m": 1}`.
//! * `placement`: `optimal` or `{"fixed_m": r}` with `r` the horizontal
//!   platform-to-Tx offset.
//! * `reflectors`: `auto` (as many as the surface can host) or a count.
//! * `gas`: `zero` or `{"table": "path/to/grid.csv"}`.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::channel::{
    EnvKind, EnvironmentClass, GasAttenuationProvider, GasTable, DEFAULT_LATITUDE_DEG,
};
use crate::error::{Error, Result};
use crate::geometry::{PlatformClass, PlatformSpec, ReflectorUnitSpec, UnitRegime, LRSS_SCALE};
use crate::metrics::NoiseConfig;
use crate::reflection::Paradigm;
use crate::units::wavelength_m;

/// The only schema version understood by this build.
pub const SCHEMA_VERSION: u32 = 1;

/// Receiver sensitivity used when a scenario does not set one, dBm.
pub const DEFAULT_THRESHOLD_DBM: f64 = -115.0;

/// Default small-unit size, in wavelengths.
pub const DEFAULT_SRSS_SCALE: f64 = 0.2;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadioConfig {
    pub pt_dbm: f64,
    pub gt_dbi: f64,
    pub gr_dbi: f64,
    pub f_ghz: f64,
    pub c1: f64,
    pub c2: f64,
    pub bandwidth_hz: f64,
    pub noise_figure_db: f64,
    pub temperature_k: f64,
}

impl RadioConfig {
    pub fn wavelength_m(&self) -> f64 {
        wavelength_m(self.f_ghz)
    }

    pub fn noise(&self) -> NoiseConfig {
        NoiseConfig {
            bandwidth_hz: self.bandwidth_hz,
            temperature_k: self.temperature_k,
            noise_figure_db: self.noise_figure_db,
        }
    }

    /// Default transmit power and gain for a platform / channel pairing.
    pub fn default_transmitter(class: PlatformClass, channel: &ChannelModel) -> (f64, f64) {
        match (channel, class) {
            (ChannelModel::LogDistance { .. }, _) => (40.0, 0.0),
            (ChannelModel::Standards, PlatformClass::Terrestrial | PlatformClass::Uav) => {
                (35.0, 8.0)
            }
            (ChannelModel::Standards, PlatformClass::Haps | PlatformClass::Leo) => (33.0, 43.2),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ChannelModel {
    /// Deterministic log-distance loss with exponent `alpha`.
    LogDistance { alpha: f64, ref_distance_m: f64 },
    /// Standards-derived stochastic models with shadowing.
    Standards,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Placement {
    Optimal,
    /// Horizontal platform-to-Tx offset `r`, metres.
    Fixed(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reflectors {
    /// Fill the surface: `N = N_max`.
    Auto,
    Count(u64),
}

#[derive(Debug, Clone, PartialEq)]
pub enum GasConfig {
    Zero,
    Table(PathBuf),
}

impl GasConfig {
    /// Loads the configured provider. Relative table paths resolve against
    /// `base_dir` when given.
    pub fn provider(&self, base_dir: Option<&Path>) -> Result<GasAttenuationProvider> {
        match self {
            GasConfig::Zero => Ok(GasAttenuationProvider::Zero),
            GasConfig::Table(path) => {
                let full = match base_dir {
                    Some(dir) if path.is_relative() => dir.join(path),
                    _ => path.clone(),
                };
                let table = GasTable::from_path(&full).map_err(|e| match e {
                    Error::Io(io) => {
                        Error::GasTable(format!("cannot read {}: {io}", full.display()))
                    }
                    other => other,
                })?;
                Ok(GasAttenuationProvider::Table(table))
            }
        }
    }
}

/// A fully resolved, validated scenario.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub platform: PlatformSpec,
    pub radio: RadioConfig,
    pub env: EnvironmentClass,
    pub paradigm: Paradigm,
    pub channel: ChannelModel,
    pub placement: Placement,
    pub reflectors: Reflectors,
    pub threshold_dbm: f64,
    pub gas: GasConfig,
    pub seed: u64,
}

impl Scenario {
    /// The class preset with every other field at its default.
    pub fn preset(class: PlatformClass) -> Scenario {
        resolve(Document {
            platform: Some(PlatformField::Class(class)),
            ..Default::default()
        })
        .expect("presets are valid")
    }

    pub fn unit(&self) -> Result<ReflectorUnitSpec> {
        ReflectorUnitSpec::for_regime(regime_for(self.paradigm), self.radio.c1, self.radio.c2)
    }

    pub fn validate(&self) -> Result<()> {
        self.platform.validate()?;
        let r = &self.radio;
        for (field, v) in [
            ("radio.pt_dbm", r.pt_dbm),
            ("radio.gt_dbi", r.gt_dbi),
            ("radio.gr_dbi", r.gr_dbi),
            ("threshold_dbm", self.threshold_dbm),
        ] {
            if !v.is_finite() {
                return Err(Error::validation(field, "must be finite"));
            }
        }
        if !(r.f_ghz > 0.0 && r.f_ghz.is_finite()) {
            return Err(Error::validation(
                "radio.f_ghz",
                format!("must be positive, got {}", r.f_ghz),
            ));
        }
        r.noise().validate()?;
        self.unit()?;
        EnvironmentClass::with_latitude(self.env.kind, self.env.latitude_deg)?;

        match self.channel {
            ChannelModel::LogDistance {
                alpha,
                ref_distance_m,
            } => {
                if !(alpha >= 2.0 && alpha.is_finite()) {
                    return Err(Error::validation(
                        "channel.alpha",
                        format!("must be at least 2, got {alpha}"),
                    ));
                }
                if self.platform.class.is_aerial() && alpha != 2.0 {
                    return Err(Error::validation(
                        "channel.alpha",
                        format!("aerial links are line-of-sight and use alpha = 2, got {alpha}"),
                    ));
                }
                if !(ref_distance_m > 0.0 && ref_distance_m.is_finite()) {
                    return Err(Error::validation(
                        "channel.ref_distance_m",
                        "must be positive",
                    ));
                }
            }
            ChannelModel::Standards => {
                if self.paradigm == Paradigm::Specular {
                    return Err(Error::validation(
                        "channel",
                        "the standards channel models describe scattering links; use log_distance for the specular paradigm",
                    ));
                }
            }
        }
        if let Placement::Fixed(offset) = self.placement {
            let span = 2.0 * self.platform.coverage_radius_m;
            if !(0.0..=span).contains(&offset) {
                return Err(Error::validation(
                    "placement.fixed_m",
                    format!("must lie in [0, {span}] (twice the coverage radius), got {offset}"),
                ));
            }
        }
        if self.reflectors == Reflectors::Count(0) {
            return Err(Error::validation(
                "reflectors",
                "must be at least 1 or \"auto\"",
            ));
        }
        Ok(())
    }

    /// Pretty JSON with every field spelled out. Loading it reproduces this
    /// scenario exactly.
    pub fn to_canonical_json(&self) -> String {
        let doc = Document {
            schema: Some(SCHEMA_VERSION),
            platform: Some(PlatformField::Detailed(PlatformObject {
                class: self.platform.class,
                altitude_m: Some(self.platform.altitude_m),
                coverage_radius_m: Some(self.platform.coverage_radius_m),
                rss_area_m2: Some(self.platform.rss_area_m2),
            })),
            radio: Some(RadioObject {
                pt_dbm: Some(self.radio.pt_dbm),
                gt_dbi: Some(self.radio.gt_dbi),
                gr_dbi: Some(self.radio.gr_dbi),
                f_ghz: Some(self.radio.f_ghz),
                c1: Some(self.radio.c1),
                c2: Some(self.radio.c2),
                bandwidth_hz: Some(self.radio.bandwidth_hz),
                noise_figure_db: Some(self.radio.noise_figure_db),
                temperature_k: Some(self.radio.temperature_k),
            }),
            environment: Some(EnvironmentField::Detailed(EnvironmentObject {
                kind: self.env.kind,
                latitude_deg: Some(self.env.latitude_deg),
            })),
            paradigm: Some(self.paradigm),
            channel: Some(match self.channel {
                ChannelModel::Standards => ChannelField::Name(ChannelName::Standards),
                ChannelModel::LogDistance {
                    alpha,
                    ref_distance_m,
                } => ChannelField::Detailed(ChannelObject {
                    model: ChannelName::LogDistance,
                    alpha: Some(alpha),
                    ref_distance_m: Some(ref_distance_m),
                }),
            }),
            placement: Some(match self.placement {
                Placement::Optimal => PlacementField::Keyword(OptimalKeyword::Optimal),
                Placement::Fixed(fixed_m) => PlacementField::Fixed(FixedPlacement { fixed_m }),
            }),
            reflectors: Some(match self.reflectors {
                Reflectors::Auto => ReflectorsField::Keyword(AutoKeyword::Auto),
                Reflectors::Count(n) => ReflectorsField::Count(n),
            }),
            threshold_dbm: Some(self.threshold_dbm),
            gas: Some(match &self.gas {
                GasConfig::Zero => GasField::Keyword(ZeroKeyword::Zero),
                GasConfig::Table(table) => GasField::Table(GasTableRef {
                    table: table.clone(),
                }),
            }),
            seed: Some(self.seed),
        };
        serde_json::to_string_pretty(&doc).expect("scenario documents always serialize")
    }
}

/// Unit regime required by a paradigm.
pub fn regime_for(paradigm: Paradigm) -> UnitRegime {
    match paradigm {
        Paradigm::Specular => UnitRegime::Lrss,
        Paradigm::Scattering => UnitRegime::Srss,
    }
}

/// Parses, fills defaults and validates a scenario document.
pub fn load_scenario(text: &str) -> Result<Scenario> {
    if text.trim().is_empty() {
        return Err(Error::Schema(
            "empty document; required fields: platform".into(),
        ));
    }
    let mut de = serde_json::Deserializer::from_str(text);
    let doc: Document = serde_path_to_error::deserialize(&mut de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        if path == "." || path.is_empty() {
            Error::Schema(inner.to_string())
        } else {
            Error::Schema(format!("field `{path}`: {inner}"))
        }
    })?;
    resolve(doc)
}

pub fn load_scenario_file(path: impl AsRef<Path>) -> Result<Scenario> {
    let text = std::fs::read_to_string(path.as_ref())?;
    load_scenario(&text)
}

fn resolve(doc: Document) -> Result<Scenario> {
    if let Some(v) = doc.schema {
        if v != SCHEMA_VERSION {
            return Err(Error::Schema(format!(
                "field `schema`: unsupported version {v} (this build reads version {SCHEMA_VERSION})"
            )));
        }
    }
    let platform = match doc.platform {
        None => return Err(Error::Schema("missing required field(s): platform".into())),
        Some(PlatformField::Class(class)) => class.preset(),
        Some(PlatformField::Detailed(obj)) => {
            let base = obj.class.preset();
            PlatformSpec {
                class: obj.class,
                altitude_m: obj.altitude_m.unwrap_or(base.altitude_m),
                coverage_radius_m: obj.coverage_radius_m.unwrap_or(base.coverage_radius_m),
                rss_area_m2: obj.rss_area_m2.unwrap_or(base.rss_area_m2),
            }
        }
    };
    let class = platform.class;

    let paradigm = doc.paradigm.unwrap_or(Paradigm::Scattering);
    let default_alpha = if class.is_aerial() { 2.0 } else { 4.0 };
    let log_distance =
        |alpha: Option<f64>, ref_distance_m: Option<f64>| ChannelModel::LogDistance {
            alpha: alpha.unwrap_or(default_alpha),
            ref_distance_m: ref_distance_m.unwrap_or(1.0),
        };
    let channel = match doc.channel {
        None if paradigm == Paradigm::Specular => log_distance(None, None),
        None | Some(ChannelField::Name(ChannelName::Standards)) => ChannelModel::Standards,
        Some(ChannelField::Name(ChannelName::LogDistance)) => log_distance(None, None),
        Some(ChannelField::Detailed(obj)) => match obj.model {
            ChannelName::LogDistance => log_distance(obj.alpha, obj.ref_distance_m),
            ChannelName::Standards => {
                if obj.alpha.is_some() || obj.ref_distance_m.is_some() {
                    return Err(Error::Schema(
                        "field `channel`: alpha and ref_distance_m only apply to the log_distance model".into(),
                    ));
                }
                ChannelModel::Standards
            }
        },
    };

    let (pt_default, gt_default) = RadioConfig::default_transmitter(class, &channel);
    let unit_default = match paradigm {
        Paradigm::Specular => LRSS_SCALE,
        Paradigm::Scattering => DEFAULT_SRSS_SCALE,
    };
    let noise = NoiseConfig::default();
    let r = doc.radio.unwrap_or_default();
    let radio = RadioConfig {
        pt_dbm: r.pt_dbm.unwrap_or(pt_default),
        gt_dbi: r.gt_dbi.unwrap_or(gt_default),
        gr_dbi: r.gr_dbi.unwrap_or(0.0),
        f_ghz: r.f_ghz.unwrap_or(30.0),
        c1: r.c1.unwrap_or(unit_default),
        c2: r.c2.unwrap_or(unit_default),
        bandwidth_hz: r.bandwidth_hz.unwrap_or(noise.bandwidth_hz),
        noise_figure_db: r.noise_figure_db.unwrap_or(noise.noise_figure_db),
        temperature_k: r.temperature_k.unwrap_or(noise.temperature_k),
    };

    let env = match doc.environment {
        None => EnvironmentClass::new(EnvKind::Urban),
        Some(EnvironmentField::Kind(kind)) => EnvironmentClass::new(kind),
        Some(EnvironmentField::Detailed(obj)) => EnvironmentClass {
            kind: obj.kind,
            latitude_deg: obj.latitude_deg.unwrap_or(DEFAULT_LATITUDE_DEG),
        },
    };

    let scenario = Scenario {
        platform,
        radio,
        env,
        paradigm,
        channel,
        placement: match doc.placement {
            None | Some(PlacementField::Keyword(OptimalKeyword::Optimal)) => Placement::Optimal,
            Some(PlacementField::Fixed(p)) => Placement::Fixed(p.fixed_m),
        },
        reflectors: match doc.reflectors {
            None | Some(ReflectorsField::Keyword(AutoKeyword::Auto)) => Reflectors::Auto,
            Some(ReflectorsField::Count(n)) => Reflectors::Count(n),
        },
        threshold_dbm: doc.threshold_dbm.unwrap_or(DEFAULT_THRESHOLD_DBM),
        gas: match doc.gas {
            None | Some(GasField::Keyword(ZeroKeyword::Zero)) => GasConfig::Zero,
            Some(GasField::Table(t)) => GasConfig::Table(t.table),
        },
        seed: doc.seed.unwrap_or(0),
    };
    scenario.validate()?;
    Ok(scenario)
}

// ---------------------------------------------------------------------------
// Wire format

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Document {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    schema: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    platform: Option<PlatformField>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    radio: Option<RadioObject>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    environment: Option<EnvironmentField>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    paradigm: Option<Paradigm>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    channel: Option<ChannelField>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    placement: Option<PlacementField>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    reflectors: Option<ReflectorsField>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    threshold_dbm: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    gas: Option<GasField>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(
    untagged,
    expecting = "a platform class name or an object with `class`"
)]
enum PlatformField {
    Class(PlatformClass),
    Detailed(PlatformObject),
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PlatformObject {
    class: PlatformClass,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    altitude_m: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    coverage_radius_m: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    rss_area_m2: Option<f64>,
}

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RadioObject {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pt_dbm: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    gt_dbi: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    gr_dbi: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    f_ghz: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    c1: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    c2: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    bandwidth_hz: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    noise_figure_db: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    temperature_k: Option<f64>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged, expecting = "an environment name or an object with `kind`")]
enum EnvironmentField {
    Kind(EnvKind),
    Detailed(EnvironmentObject),
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EnvironmentObject {
    kind: EnvKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    latitude_deg: Option<f64>,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
enum ChannelName {
    #[serde(rename = "standards")]
    Standards,
    #[serde(rename = "log_distance")]
    LogDistance,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(
    untagged,
    expecting = "\"standards\", \"log_distance\" or an object with `model`"
)]
enum ChannelField {
    Name(ChannelName),
    Detailed(ChannelObject),
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ChannelObject {
    model: ChannelName,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    alpha: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    ref_distance_m: Option<f64>,
}

#[derive(Debug, Serialize, Deserialize)]
enum OptimalKeyword {
    #[serde(rename = "optimal")]
    Optimal,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FixedPlacement {
    fixed_m: f64,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged, expecting = "\"optimal\" or {\"fixed_m\": <metres>}")]
enum PlacementField {
    Keyword(OptimalKeyword),
    Fixed(FixedPlacement),
}

#[derive(Debug, Serialize, Deserialize)]
enum AutoKeyword {
    #[serde(rename = "auto")]
    Auto,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged, expecting = "\"auto\" or a non-negative integer")]
enum ReflectorsField {
    Keyword(AutoKeyword),
    Count(u64),
}

#[derive(Debug, Serialize, Deserialize)]
enum ZeroKeyword {
    #[serde(rename = "zero")]
    Zero,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GasTableRef {
    table: PathBuf,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged, expecting = "\"zero\" or {\"table\": <path>}")]
enum GasField {
    Keyword(ZeroKeyword),
    Table(GasTableRef),
}
