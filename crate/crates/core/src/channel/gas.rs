//! Atmospheric gas absorption.
//!
//! No spectroscopic model is built in. Callers either switch the term off or
//! supply a precomputed grid of losses over (frequency, path length).
//!
//! Grid CSV layout:
//!
//! ```text
//! path_km,10,20,30,60      <- first cell is a label, then frequencies in GHz
//! 20,0.1,0.5,1.0,14.0      <- path length in km, then loss in dB per frequency
//! 100,0.4,2.2,4.6,70.0
//! ```
//!
//! Both axes must be strictly increasing. Lookups interpolate bilinearly and
//! clamp to the nearest edge outside the grid.

use std::io::Read;
use std::path::Path;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Default)]
pub enum GasAttenuationProvider {
    #[default]
    Zero,
    Table(GasTable),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GasLoss {
    pub db: f64,
    /// The query fell outside the grid and was clamped.
    pub clamped: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GasTable {
    freqs_ghz: Vec<f64>,
    paths_km: Vec<f64>,
    /// `values[path_index][freq_index]`, dB.
    values: Vec<Vec<f64>>,
}

fn strictly_increasing(axis: &[f64]) -> bool {
    axis.windows(2).all(|w| w[0] < w[1])
}

fn parse_cell(raw: &str, what: &str) -> Result<f64> {
    raw.trim()
        .parse::<f64>()
        .map_err(|_| Error::GasTable(format!("cannot parse {what} `{raw}`")))
}

impl GasTable {
    pub fn new(freqs_ghz: Vec<f64>, paths_km: Vec<f64>, values: Vec<Vec<f64>>) -> Result<Self> {
        if freqs_ghz.is_empty() || paths_km.is_empty() {
            return Err(Error::GasTable(
                "grid needs at least one frequency and one path length".into(),
            ));
        }
        if !strictly_increasing(&freqs_ghz) {
            return Err(Error::GasTable(
                "frequency axis is not strictly increasing".into(),
            ));
        }
        if !strictly_increasing(&paths_km) {
            return Err(Error::GasTable(
                "path-length axis is not strictly increasing".into(),
            ));
        }
        if values.len() != paths_km.len() || values.iter().any(|row| row.len() != freqs_ghz.len()) {
            return Err(Error::GasTable("grid shape does not match its axes".into()));
        }
        if values
            .iter()
            .flatten()
            .any(|v| !(v.is_finite() && *v >= 0.0))
        {
            return Err(Error::GasTable(
                "losses must be finite and non-negative".into(),
            ));
        }
        Ok(GasTable {
            freqs_ghz,
            paths_km,
            values,
        })
    }

    pub fn from_reader<R: Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(false)
            .trim(csv::Trim::All)
            .from_reader(reader);
        let mut records = rdr.records();
        let header = records
            .next()
            .ok_or_else(|| Error::GasTable("empty table".into()))??;
        let freqs = header
            .iter()
            .skip(1)
            .map(|c| parse_cell(c, "frequency"))
            .collect::<Result<Vec<_>>>()?;
        let mut paths = Vec::new();
        let mut values = Vec::new();
        for record in records {
            let record = record?;
            let mut cells = record.iter();
            let path = parse_cell(cells.next().unwrap_or(""), "path length")?;
            let row = cells
                .map(|c| parse_cell(c, "loss"))
                .collect::<Result<Vec<_>>>()?;
            paths.push(path);
            values.push(row);
        }
        GasTable::new(freqs, paths, values)
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self> {
        let file = std::fs::File::open(path.as_ref())?;
        Self::from_reader(file)
    }

    pub fn lookup(&self, f_ghz: f64, path_km: f64) -> GasLoss {
        let (fi, ft, f_clamped) = bracket(&self.freqs_ghz, f_ghz);
        let (pi, pt, p_clamped) = bracket(&self.paths_km, path_km);
        let v = |p: usize, f: usize| self.values[p][f];
        let (f1, p1) = (
            (fi + 1).min(self.freqs_ghz.len() - 1),
            (pi + 1).min(self.paths_km.len() - 1),
        );
        let low = v(pi, fi) * (1.0 - ft) + v(pi, f1) * ft;
        let high = v(p1, fi) * (1.0 - ft) + v(p1, f1) * ft;
        GasLoss {
            db: low * (1.0 - pt) + high * pt,
            clamped: f_clamped || p_clamped,
        }
    }
}

/// Lower index and interpolation weight of `x` on `axis`, clamped to its ends.
fn bracket(axis: &[f64], x: f64) -> (usize, f64, bool) {
    let last = axis.len() - 1;
    if x <= axis[0] {
        return (0, 0.0, x < axis[0]);
    }
    if x >= axis[last] {
        return (last, 0.0, x > axis[last]);
    }
    let i = axis.partition_point(|&a| a <= x) - 1;
    (i, (x - axis[i]) / (axis[i + 1] - axis[i]), false)
}

/// Gas loss in dB along a path of `path_length_m`. The elevation is accepted
/// for interface symmetry; the grid is indexed by path length alone.
pub fn gas_attenuation(
    provider: &GasAttenuationProvider,
    f_ghz: f64,
    path_length_m: f64,
    _elev_deg: f64,
) -> GasLoss {
    match provider {
        GasAttenuationProvider::Zero => GasLoss {
            db: 0.0,
            clamped: false,
        },
        GasAttenuationProvider::Table(table) => table.lookup(f_ghz, path_length_m / 1_000.0),
    }
}
