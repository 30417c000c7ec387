use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::SurfaceMesh;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Largest number of cells drawn per axis; finer meshes are subsampled.
const MAX_CELLS: usize = 200;
const CELL: usize = 3;

/// Scalar plotted by the heatmap.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Component {
    Re,
    Im,
    Abs,
}

/// Five-stop perceptual ramp from dark blue to yellow.
fn colour(t: f64) -> (u8, u8, u8) {
    const STOPS: [(f64, f64, f64); 5] =
        [(68.0, 1.0, 84.0), (59.0, 82.0, 139.0), (33.0, 145.0, 140.0), (94.0, 201.0, 98.0), (253.0, 231.0, 37.0)];
    let t = if t.is_finite() { t.clamp(0.0, 1.0) } else { 0.0 };
    let x = t * (STOPS.len() - 1) as f64;
    let i = (x.floor() as usize).min(STOPS.len() - 2);
    let f = x - i as f64;
    let mix = |a: f64, b: f64| (a + (b - a) * f).round() as u8;
    (mix(STOPS[i].0, STOPS[i + 1].0), mix(STOPS[i].1, STOPS[i + 1].1), mix(STOPS[i].2, STOPS[i + 1].2))
}

/// Self-contained SVG heatmap of one sheet; the real axis runs left to right,
/// the imaginary axis bottom to top.
pub fn render_svg<T: Scalar + Serialize>(mesh: &SurfaceMesh<T>, sheet: usize, component: Component) -> Result<String> {
    let grid = mesh.sheets.get(sheet).ok_or_else(|| Error::invalid(format!("no sheet {sheet} in mesh")))?;
    let sx = mesh.nx.div_ceil(MAX_CELLS);
    let sy = mesh.ny.div_ceil(MAX_CELLS);
    let cols: Vec<usize> = (0..mesh.nx).step_by(sx).collect();
    let rows: Vec<usize> = (0..mesh.ny).step_by(sy).collect();
    let pick = |ix: usize, iy: usize| {
        let z = grid.values[iy * mesh.nx + ix];
        let v = match component {
            Component::Re => z.re,
            Component::Im => z.im,
            Component::Abs => z.norm(),
        };
        v.to_f64().unwrap_or(f64::NAN)
    };
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for &iy in &rows {
        for &ix in &cols {
            let v = pick(ix, iy);
            if v.is_finite() {
                lo = lo.min(v);
                hi = hi.max(v);
            }
        }
    }
    let span = if hi > lo { hi - lo } else { 1.0 };
    let (w, h) = (cols.len() * CELL, rows.len() * CELL);
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{}" viewBox="0 0 {w} {}" shape-rendering="crispEdges">"#,
        h + 20,
        h + 20
    );
    let _ = writeln!(out, "<title>sheet {} {:?} in [{lo:.6}, {hi:.6}]</title>", grid.sheet, component);
    for (r, &iy) in rows.iter().enumerate() {
        let y = h - (r + 1) * CELL;
        for (c, &ix) in cols.iter().enumerate() {
            let (red, green, blue) = colour((pick(ix, iy) - lo) / span);
            let _ = writeln!(
                out,
                r##"<rect x="{}" y="{y}" width="{CELL}" height="{CELL}" fill="#{red:02x}{green:02x}{blue:02x}"/>"##,
                c * CELL
            );
        }
    }
    let _ = writeln!(
        out,
        r#"<text x="2" y="{}" font-family="monospace" font-size="11">sheet {} {:?}: {lo:.4} .. {hi:.4}</text>"#,
        h + 14,
        grid.sheet,
        component
    );
    out.push_str("</svg>\n");
    Ok(out)
}
