use num_complex::Complex;

use super::*;
use crate::spectral::{energy, Frequencies, LevelSpec, SheetLabel};

type C = Complex<f64>;

fn freqs(nu: f64, omega: f64) -> Frequencies<f64> {
    Frequencies::new(nu, omega).unwrap()
}

#[test]
fn default_window_encloses_branch_points() {
    let w = Window::default_for(&freqs(2.0, 1.0));
    assert_eq!((w.re_min, w.re_max, w.im_min, w.im_max), (-6.0, 6.0, -6.0, 6.0));
    let w = Window::default_for(&freqs(4.0, 1.0));
    assert_eq!(w.re_max, 22.5);
    assert!(Window::new(1.0, 0.0, 0.0, 1.0).is_err());
}

#[test]
fn coupled_mesh_values() {
    let f = freqs(2.0, 1.0);
    let level = LevelSpec::new(1, 1).unwrap();
    let mesh = SurfaceMesh::coupled(&f, level, Window::symmetric(2.0).unwrap(), 5, 5).unwrap();
    assert_eq!(mesh.sheets.len(), 8);
    assert!(mesh.sheets.iter().all(|s| s.values.len() == 25));
    let g = mesh.node(3, 1);
    assert_eq!(g, C::new(1.0, -1.0));
    let sheet: SheetLabel = mesh.sheets[5].sheet.parse().unwrap();
    assert_eq!(mesh.value(5, 3, 1), energy(&f, level, sheet, g));
    mesh.verify().unwrap();
}

#[test]
fn equal_frequency_ground_mesh_at_origin() {
    let f = freqs(1.0, 1.0);
    let mesh = SurfaceMesh::coupled(&f, LevelSpec::ground(), Window::symmetric(1.0).unwrap(), 3, 3).unwrap();
    let mut at_zero: Vec<f64> = (0..8).map(|s| mesh.value(s, 1, 1).re).collect();
    at_zero.sort_by(|a, b| a.partial_cmp(b).unwrap());
    at_zero.dedup();
    assert_eq!(at_zero, vec![-2.0, 0.0, 2.0]);
}

#[test]
fn json_round_trip_is_bit_exact() {
    let mesh =
        SurfaceMesh::coupled(&freqs(2.0, 1.0), LevelSpec::ground(), Window::symmetric(6.0).unwrap(), 17, 9).unwrap();
    let text = mesh.to_json().unwrap();
    let back = SurfaceMesh::<f64>::from_json(&text).unwrap();
    for (a, b) in mesh.sheets.iter().zip(&back.sheets) {
        for (x, y) in a.values.iter().zip(&b.values) {
            assert_eq!(x.re.to_bits(), y.re.to_bits());
            assert_eq!(x.im.to_bits(), y.im.to_bits());
        }
    }
    assert_eq!(back, mesh);
}

#[test]
fn timestamp_is_outside_the_checksum() {
    let mesh =
        SurfaceMesh::coupled(&freqs(2.0, 1.0), LevelSpec::ground(), Window::symmetric(1.0).unwrap(), 3, 3).unwrap();
    let stamped = mesh.clone().with_timestamp("2026-01-01T00:00:00Z");
    assert_eq!(stamped.compute_checksum(), mesh.checksum);
    stamped.verify().unwrap();
    let mut tampered = mesh.clone();
    tampered.sheets[0].values[0].re += 1.0;
    assert!(tampered.verify().is_err());
}

#[test]
fn csv_layout_and_agreement_with_json() {
    let mesh =
        SurfaceMesh::coupled(&freqs(2.0, 1.0), LevelSpec::ground(), Window::symmetric(1.0).unwrap(), 3, 2).unwrap();
    let csv = mesh.to_csv();
    assert!(!csv.contains('\r'));
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], CSV_HEADER);
    assert_eq!(lines.len(), 1 + 8 * 6);
    let first: Vec<&str> = lines[1].split(',').collect();
    assert_eq!(&first[..5], &["-1", "-1", "+", "+", "+"]);
    for (k, line) in lines[1..].iter().enumerate() {
        let cols: Vec<&str> = line.split(',').collect();
        let (s, cell) = (k / 6, k % 6);
        let v = mesh.value(s, cell % 3, cell / 3);
        assert_eq!(cols[5].parse::<f64>().unwrap().to_bits(), v.re.to_bits());
        assert_eq!(cols[6].parse::<f64>().unwrap().to_bits(), v.im.to_bits());
    }
}

#[test]
fn single_oscillator_meshes() {
    let w = Window::symmetric(1.0).unwrap();
    let ho = SurfaceMesh::single(MeshModel::Ho, 0.3, w, 5, 5).unwrap();
    assert_eq!(ho.metadata.delta, None);
    assert_eq!(ho.sheets.len(), 2);
    assert!((ho.value(0, 4, 2) - C::new(1.0, 0.0)).norm() < 1e-15);
    let modified = SurfaceMesh::single(MeshModel::HoMod, 0.5, w, 5, 5).unwrap();
    assert_eq!(modified.metadata.delta, Some(0.5));
    assert!((modified.value(0, 2, 2) - C::new(0.5, 0.0)).norm() < 1e-15);
    let csv = modified.to_csv();
    assert!(csv.lines().nth(1).unwrap().contains(",+,,,"));
    assert!(SurfaceMesh::single(MeshModel::HoMod, -1.0, w, 5, 5).is_err());
    assert!(SurfaceMesh::single(MeshModel::Coupled, 0.0, w, 5, 5).is_err());
}

#[test]
fn svg_renders() {
    let mesh =
        SurfaceMesh::coupled(&freqs(2.0, 1.0), LevelSpec::ground(), Window::symmetric(6.0).unwrap(), 401, 11).unwrap();
    let svg = render_svg(&mesh, 0, Component::Im).unwrap();
    assert!(svg.starts_with("<svg"));
    assert!(svg.trim_end().ends_with("</svg>"));
    assert_eq!(svg.matches("<rect").count(), 401usize.div_ceil(3) * 11);
    assert!(render_svg(&mesh, 8, Component::Re).is_err());
}

#[test]
fn documents_carry_checksums() {
    let doc = Document::new("example", vec![1.0, 2.0]).unwrap();
    doc.verify().unwrap();
    let json = doc.to_json_pretty().unwrap();
    let back: Document<Vec<f64>> = serde_json::from_str(&json).unwrap();
    assert_eq!(back, doc);
    assert_eq!(back.schema_version, DOCUMENT_SCHEMA_VERSION);
    let mut bad = back;
    bad.data[0] = 3.0;
    assert!(bad.verify().is_err());
}
