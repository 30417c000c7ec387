use std::fmt::Write as _;

use num_complex::Complex;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::format::{fnv1a64, format_g17};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::single::{modified_energy, ModifiedOscillator};
use crate::spectral::{Frequencies, LevelSpec, Radicals, SheetLabel, Sign};

pub const MESH_SCHEMA_VERSION: u32 = 1;
pub const DEFAULT_RESOLUTION: usize = 201;
pub const BRANCH_CONVENTION: &str =
    "principal square root, cut on the negative real axis, value on the cut taken from above";
pub const CSV_HEADER: &str = "re_g,im_g,sheet_inner,sheet_sA,sheet_sB,re_E,im_E";
pub const TOOL_VERSION: &str = concat!("coupled-osc ", env!("CARGO_PKG_VERSION"));

/// Which energy function a mesh samples.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MeshModel {
    /// Coupled oscillators over the complex coupling `g`.
    Coupled,
    /// Plain oscillator over the complex frequency `ν`.
    Ho,
    /// δ-modified oscillator over the complex frequency `ν`.
    HoMod,
}

/// Rectangle in the complex plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Window<T> {
    pub re_min: T,
    pub re_max: T,
    pub im_min: T,
    pub im_max: T,
}

impl<T: Scalar> Window<T> {
    pub fn new(re_min: T, re_max: T, im_min: T, im_max: T) -> Result<Self> {
        let ok = [re_min, re_max, im_min, im_max].iter().all(|v| v.is_finite()) && re_min < re_max && im_min < im_max;
        if !ok {
            return Err(Error::invalid("window bounds must be finite with min < max"));
        }
        Ok(Window { re_min, re_max, im_min, im_max })
    }

    /// Square `[−h, h]²`.
    pub fn symmetric(half_width: T) -> Result<Self> {
        Self::new(-half_width, half_width, -half_width, half_width)
    }

    /// `±1.5·max(2νω, |ν² − ω²|)` in both directions.
    pub fn default_for(freqs: &Frequencies<T>) -> Self {
        let h = T::lit(1.5) * freqs.real_threshold().max(freqs.imaginary_threshold());
        Window { re_min: -h, re_max: h, im_min: -h, im_max: h }
    }

    /// Grid node `(ix, iy)` of an `nx × ny` grid spanning the window.
    pub fn node(&self, ix: usize, iy: usize, nx: usize, ny: usize) -> Complex<T> {
        let fx = T::count(ix) / T::count(nx - 1);
        let fy = T::count(iy) / T::count(ny - 1);
        Complex::new(self.re_min + (self.re_max - self.re_min) * fx, self.im_min + (self.im_max - self.im_min) * fy)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeshMetadata<T> {
    pub model: MeshModel,
    #[serde(default = "none", skip_serializing_if = "Option::is_none")]
    pub freqs: Option<Frequencies<T>>,
    #[serde(default = "none", skip_serializing_if = "Option::is_none")]
    pub level: Option<LevelSpec>,
    #[serde(default = "none", skip_serializing_if = "Option::is_none")]
    pub delta: Option<T>,
    pub branch_convention: String,
    pub tool_version: String,
    /// Not covered by the checksum.
    #[serde(default = "none", skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<String>,
}

/// Values of one sheet, row-major with `iy` outer and `ix` inner.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SheetGrid<T> {
    /// `"+-+"` for the coupled system, `"+"`/`"-"` for the single oscillator.
    pub sheet: String,
    pub values: Vec<Complex<T>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurfaceMesh<T> {
    pub schema_version: u32,
    pub metadata: MeshMetadata<T>,
    pub window: Window<T>,
    pub nx: usize,
    pub ny: usize,
    pub sheets: Vec<SheetGrid<T>>,
    /// FNV-1a over the JSON payload without the timestamp.
    pub checksum: String,
}

#[derive(Serialize)]
struct Payload<'a, T> {
    schema_version: u32,
    metadata: &'a MeshMetadata<T>,
    window: &'a Window<T>,
    nx: usize,
    ny: usize,
    sheets: &'a [SheetGrid<T>],
}

fn check_resolution(nx: usize, ny: usize) -> Result<()> {
    if nx < 2 || ny < 2 {
        return Err(Error::invalid("mesh resolution must be at least 2 × 2"));
    }
    Ok(())
}

/// Evaluates `f` at every node and returns one grid per output slot.
fn sample<T: Scalar, const K: usize>(
    window: &Window<T>,
    nx: usize,
    ny: usize,
    f: impl Fn(Complex<T>) -> [Complex<T>; K] + Sync,
) -> Vec<Vec<Complex<T>>> {
    let rows: Vec<Vec<[Complex<T>; K]>> =
        (0..ny).into_par_iter().map(|iy| (0..nx).map(|ix| f(window.node(ix, iy, nx, ny))).collect()).collect();
    (0..K).map(|k| rows.iter().flatten().map(|cell| cell[k]).collect()).collect()
}

impl<T: Scalar + Serialize> SurfaceMesh<T> {
    /// All eight sheets of `level` over the coupling plane.
    pub fn coupled(freqs: &Frequencies<T>, level: LevelSpec, window: Window<T>, nx: usize, ny: usize) -> Result<Self> {
        check_resolution(nx, ny)?;
        let grids = sample(&window, nx, ny, |g| {
            let rad = Radicals::at(freqs, g);
            SheetLabel::ALL.map(|s| rad.energy(level, s))
        });
        let sheets =
            SheetLabel::ALL.iter().zip(grids).map(|(s, values)| SheetGrid { sheet: s.to_string(), values }).collect();
        let metadata = MeshMetadata {
            model: MeshModel::Coupled,
            freqs: Some(*freqs),
            level: Some(level),
            delta: None,
            branch_convention: BRANCH_CONVENTION.into(),
            tool_version: TOOL_VERSION.into(),
            timestamp: None,
        };
        Ok(Self::assemble(metadata, window, nx, ny, sheets))
    }

    /// Both sheets of the single oscillator over the frequency plane;
    /// `delta = 0` for [`MeshModel::Ho`].
    pub fn single(model: MeshModel, delta: T, window: Window<T>, nx: usize, ny: usize) -> Result<Self> {
        check_resolution(nx, ny)?;
        let delta = match model {
            MeshModel::Coupled => return Err(Error::invalid("use SurfaceMesh::coupled for the coupled model")),
            MeshModel::Ho => T::zero(),
            MeshModel::HoMod => delta,
        };
        ModifiedOscillator::new(delta, Complex::from(T::zero()))?;
        let grids = sample(&window, nx, ny, |nu| {
            let osc = ModifiedOscillator::new(delta, nu).expect("validated delta and finite node");
            Sign::BOTH.map(|s| modified_energy(&osc, s))
        });
        let sheets = Sign::BOTH
            .iter()
            .zip(grids)
            .map(|(s, values)| SheetGrid { sheet: s.symbol().to_string(), values })
            .collect();
        let metadata = MeshMetadata {
            model,
            freqs: None,
            level: None,
            delta: (model == MeshModel::HoMod).then_some(delta),
            branch_convention: BRANCH_CONVENTION.into(),
            tool_version: TOOL_VERSION.into(),
            timestamp: None,
        };
        Ok(Self::assemble(metadata, window, nx, ny, sheets))
    }

    fn assemble(metadata: MeshMetadata<T>, window: Window<T>, nx: usize, ny: usize, sheets: Vec<SheetGrid<T>>) -> Self {
        let mut mesh = SurfaceMesh {
            schema_version: MESH_SCHEMA_VERSION,
            metadata,
            window,
            nx,
            ny,
            sheets,
            checksum: String::new(),
        };
        mesh.checksum = mesh.compute_checksum();
        mesh
    }

    pub fn with_timestamp(mut self, timestamp: impl Into<String>) -> Self {
        self.metadata.timestamp = Some(timestamp.into());
        self
    }

    pub fn compute_checksum(&self) -> String {
        let metadata = MeshMetadata { timestamp: None, ..self.metadata.clone() };
        let payload = Payload {
            schema_version: self.schema_version,
            metadata: &metadata,
            window: &self.window,
            nx: self.nx,
            ny: self.ny,
            sheets: &self.sheets,
        };
        let bytes = serde_json::to_vec(&payload).expect("mesh payload serializes");
        format!("fnv1a64:{:016x}", fnv1a64(&bytes))
    }

    /// Grid node `(ix, iy)`.
    pub fn node(&self, ix: usize, iy: usize) -> Complex<T> {
        self.window.node(ix, iy, self.nx, self.ny)
    }

    /// Value of sheet `sheet` at node `(ix, iy)`.
    pub fn value(&self, sheet: usize, ix: usize, iy: usize) -> Complex<T> {
        self.sheets[sheet].values[iy * self.nx + ix]
    }

    /// Checks dimensions, schema version and checksum.
    pub fn verify(&self) -> Result<()> {
        if self.schema_version != MESH_SCHEMA_VERSION {
            return Err(Error::invalid(format!("unsupported mesh schema version {}", self.schema_version)));
        }
        check_resolution(self.nx, self.ny)?;
        if self.sheets.iter().any(|s| s.values.len() != self.nx * self.ny) {
            return Err(Error::invalid("grid size does not match the resolution"));
        }
        if self.checksum != self.compute_checksum() {
            return Err(Error::invalid("mesh checksum mismatch"));
        }
        Ok(())
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string(self).map_err(|e| Error::invalid(format!("mesh serialization failed: {e}")))
    }

    /// Parses and verifies a mesh.
    pub fn from_json(text: &str) -> Result<Self>
    where
        T: for<'de> Deserialize<'de>,
    {
        let mesh: Self = serde_json::from_str(text).map_err(|e| Error::invalid(format!("invalid mesh JSON: {e}")))?;
        mesh.verify()?;
        Ok(mesh)
    }

    /// One line per node and sheet under [`CSV_HEADER`]; `%.17g` numbers, LF endings.
    /// Single-oscillator sheets fill `sheet_inner` only.
    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(self.sheets.len() * self.nx * self.ny * 96);
        out.push_str(CSV_HEADER);
        out.push('\n');
        let num = |x: T| format_g17(x.to_f64().unwrap_or(f64::NAN));
        for sheet in &self.sheets {
            let mut signs = sheet.sheet.chars().map(String::from);
            let cols: [String; 3] =
                [signs.next().unwrap_or_default(), signs.next().unwrap_or_default(), signs.next().unwrap_or_default()];
            for iy in 0..self.ny {
                for ix in 0..self.nx {
                    let g = self.node(ix, iy);
                    let e = sheet.values[iy * self.nx + ix];
                    let _ = writeln!(
                        out,
                        "{},{},{},{},{},{},{}",
                        num(g.re),
                        num(g.im),
                        cols[0],
                        cols[1],
                        cols[2],
                        num(e.re),
                        num(e.im)
                    );
                }
            }
        }
        out
    }
}

fn none<U>() -> Option<U> {
    None
}
