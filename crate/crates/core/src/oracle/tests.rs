use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::error::Error;
use crate::recurrence::{energies_from_subsystem, TopSubsystem};
use crate::spectral::{AnsatzParameters, Frequencies};

type C = Complex<f64>;

fn cx(re: f64, im: f64) -> C {
    C::new(re, im)
}

fn freqs(nu: f64, omega: f64) -> Frequencies<f64> {
    Frequencies::new(nu, omega).unwrap()
}

fn sorted(mut v: Vec<C>) -> Vec<C> {
    v.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap().then(a.im.partial_cmp(&b.im).unwrap()));
    v
}

fn max_match_distance(a: &[C], b: &[C]) -> f64 {
    let idx = greedy_match(a, b);
    a.iter().zip(idx).map(|(x, i)| (x - b[i]).norm()).fold(0.0, f64::max)
}

#[test]
fn decoupled_diagonal() {
    let h = build_truncated(&freqs(2.0, 1.0), cx(0.0, 0.0), 3).unwrap();
    let m = h.matrix();
    let diag: Vec<f64> = (0..9).map(|i| m[(i, i)].re).collect();
    assert_eq!(diag, vec![3.0, 5.0, 7.0, 7.0, 9.0, 11.0, 11.0, 13.0, 15.0]);
    assert!((0..9).all(|i| (0..9).all(|j| i == j || m[(i, j)] == cx(0.0, 0.0))));
}

#[test]
fn complex_symmetric_construction() {
    let h = build_truncated(&freqs(2.0, 1.0), cx(1.0, 2.0), 6).unwrap();
    assert!(h.matrix().is_symmetric());
    assert_eq!(h.matrix().transpose(), *h.matrix());
    // x and y matrix elements: ⟨1|x|0⟩⟨1|y|0⟩ = 1/√(2·2) · 1/√(2·1)
    let want = cx(1.0, 2.0) * (0.25f64.sqrt() * 0.5f64.sqrt());
    assert!((h.matrix()[(0, 7)] - want).norm() < 1e-15);
}

#[test]
fn rejects_tiny_basis() {
    assert!(build_truncated(&freqs(2.0, 1.0), cx(0.0, 0.0), 1).is_err());
}

#[test]
fn ground_state_at_unit_coupling() {
    let h = build_truncated(&freqs(2.0, 1.0), cx(1.0, 0.0), 40).unwrap();
    let e = h.eigenvalues().unwrap();
    let want = (5.0 + 15f64.sqrt()).sqrt();
    assert!((e[0].re - want).abs() < 1e-8, "{}", e[0]);
}

#[test]
fn dense_small_examples() {
    let ev = eigenvalues_dense(&CMatrix::<f64>::identity(4)).unwrap();
    assert!(ev.iter().all(|z| (z - cx(1.0, 0.0)).norm() < 1e-15));
    let companion =
        CMatrix::from_rows(vec![vec![cx(0.0, 0.0), cx(-3.0, 0.0)], vec![cx(1.0, 0.0), cx(4.0, 0.0)]]).unwrap();
    let ev = sorted(eigenvalues_dense(&companion).unwrap());
    assert!((ev[0] - cx(1.0, 0.0)).norm() < 1e-14);
    assert!((ev[1] - cx(3.0, 0.0)).norm() < 1e-14);
    let rotation =
        CMatrix::from_rows(vec![vec![cx(0.0, 0.0), cx(-1.0, 0.0)], vec![cx(1.0, 0.0), cx(0.0, 0.0)]]).unwrap();
    let ev = sorted(eigenvalues_dense(&rotation).unwrap());
    assert!((ev[0] - cx(0.0, -1.0)).norm() < 1e-14);
    assert!((ev[1] - cx(0.0, 1.0)).norm() < 1e-14);
    assert!(eigenvalues_dense(&CMatrix::<f64>::zeros(0)).unwrap().is_empty());
}

#[test]
fn dense_rejects_non_finite() {
    let mut m = CMatrix::<f64>::identity(3);
    m[(1, 2)] = cx(f64::NAN, 0.0);
    assert!(matches!(eigenvalues_dense(&m), Err(Error::InvalidInput(_))));
}

#[test]
fn dense_backward_error_on_random_matrices() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for dim in [5, 30, 60] {
        let mut m = CMatrix::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m[(i, j)] = cx(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            }
        }
        let ev = eigenvalues_dense(&m).unwrap();
        assert_eq!(ev.len(), dim);
        let trace: C = (0..dim).map(|i| m[(i, i)]).sum();
        assert!((trace - ev.iter().sum::<C>()).norm() < 1e-10 * dim as f64);
        let norm = m.frobenius_norm();
        for k in 0..10.min(dim) {
            let lambda = ev[rng.gen_range(0..dim)];
            let v = inverse_iteration(&m, lambda).unwrap();
            let mv = m.mul_vec(&v);
            let r = mv.iter().zip(&v).map(|(a, b)| (a - lambda * b).norm_sqr()).sum::<f64>().sqrt();
            assert!(r / norm < 1e-9, "dim {dim} pair {k}: {r}");
        }
    }
}

#[test]
fn truncated_complex_coupling_residuals() {
    let h = build_truncated(&freqs(2.0, 1.0), cx(1.0, 0.7), 10).unwrap();
    let ev = h.eigenvalues().unwrap();
    assert_eq!(ev.len(), 100);
    let whole = sorted(eigenvalues_dense(h.matrix()).unwrap());
    assert!(max_match_distance(&ev, &whole) < 1e-9);
    let norm = h.matrix().frobenius_norm();
    for &lambda in ev.iter().take(10) {
        let v = inverse_iteration(h.matrix(), lambda).unwrap();
        let mv = h.matrix().mul_vec(&v);
        let r = mv.iter().zip(&v).map(|(a, b)| (a - lambda * b).norm_sqr()).sum::<f64>().sqrt();
        assert!(r / norm < 1e-9);
    }
}

#[test]
fn symmetric_and_general_paths_agree() {
    let h = build_truncated(&freqs(4.0, 1.0), cx(2.0, 0.0), 8).unwrap();
    let fast = h.eigenvalues().unwrap();
    let general = sorted(eigenvalues_dense(h.matrix()).unwrap());
    assert!(max_match_distance(&fast, &general) < 1e-10);
}

#[test]
fn symmetric_solver_small() {
    // [[2, 1, 0], [1, 2, 1], [0, 1, 2]]
    let a = [2.0, 1.0, 0.0, 1.0, 2.0, 1.0, 0.0, 1.0, 2.0];
    let ev = symmetric_eigenvalues(&a, 3).unwrap();
    let s = 2f64.sqrt();
    for (x, y) in ev.iter().zip([2.0 - s, 2.0, 2.0 + s]) {
        assert!((x - y).abs() < 1e-14);
    }
    assert!(symmetric_eigenvalues(&a, 2).is_err());
}

#[test]
fn tridiagonal_cross_check() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..20 {
        let mut z = |lo: f64, hi: f64, s: f64| cx(rng.gen_range(lo..hi), rng.gen_range(-s..s));
        let p = AnsatzParameters::new(z(0.5, 3.0, 0.5), z(0.5, 3.0, 0.5), z(-1.0, 1.0, 0.5));
        for n in 0..=10 {
            let dense = CMatrix::from_rows(TopSubsystem::new(n, &p).to_dense()).unwrap();
            let a = eigenvalues_dense(&dense).unwrap();
            let b = energies_from_subsystem(n, &p).unwrap().value;
            let scale = b.iter().map(|v| v.norm()).fold(1.0, f64::max);
            assert!(max_match_distance(&b, &a) < 1e-10 * scale, "n={n}");
        }
    }
}

#[test]
fn real_coupling_stays_real_past_threshold() {
    // the truncated matrix is real symmetric for real g
    for g in [3.9, 4.1] {
        let ev = build_truncated(&freqs(2.0, 1.0), cx(g, 0.0), 12).unwrap().eigenvalues().unwrap();
        assert!(ev.iter().all(|z| z.im == 0.0));
    }
}

#[test]
fn validation_decoupled_exact() {
    let report = validate_closed_forms(&freqs(2.0, 1.0), &[0.0], 2, 8).unwrap();
    assert_eq!(report.points[0].levels.len(), 6);
    assert!(report.max_deviation() < 1e-13);
    let values: Vec<f64> = report.points[0].levels.iter().map(|l| l.closed_form.re).collect();
    assert_eq!(values, vec![3.0, 5.0, 7.0, 7.0, 9.0, 9.0]);
}

#[test]
fn validation_coupled() {
    let report = validate_closed_forms(&freqs(2.0, 1.0), &[1.0], 4, 40).unwrap();
    assert_eq!(report.points[0].levels.len(), 15);
    assert!(report.max_deviation() < 1e-8, "{}", report.max_deviation());
    let report = validate_closed_forms(&freqs(4.0, 1.0), &[2.0], 2, 40).unwrap();
    assert!(report.max_deviation() < 1e-8, "{}", report.max_deviation());
    let json = serde_json::to_string(&report).unwrap();
    let back: ValidationReport<f64> = serde_json::from_str(&json).unwrap();
    assert_eq!(back, report);
}

#[test]
fn validation_rejects_and_detects_truncation() {
    assert!(matches!(validate_closed_forms(&freqs(2.0, 1.0), &[4.0], 2, 20), Err(Error::InvalidInput(_))));
    assert!(matches!(validate_closed_forms(&freqs(2.0, 1.0), &[1.0], 6, 8), Err(Error::InvalidInput(_))));
    assert!(matches!(validate_closed_forms(&freqs(2.0, 1.0), &[3.5], 2, 8), Err(Error::TruncationInsufficient(_))));
}
