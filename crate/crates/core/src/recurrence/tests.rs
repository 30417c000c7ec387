use num_complex::Complex;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::system::system_matrix_for_tests;
use super::*;
use crate::spectral::{ansatz_parameters, energy, Frequencies, LevelSpec, SheetLabel};

type C = Complex<f64>;

fn cx(re: f64, im: f64) -> C {
    C::new(re, im)
}

fn params(a: f64, b: f64, g: f64) -> AnsatzParameters<f64> {
    AnsatzParameters::real(a, b, g)
}

fn random_params(rng: &mut ChaCha8Rng) -> AnsatzParameters<f64> {
    let mut z = |lo: f64, hi: f64, spread: f64| cx(rng.gen_range(lo..hi), rng.gen_range(-spread..spread));
    AnsatzParameters::new(z(0.5, 3.0, 0.5), z(0.5, 3.0, 0.5), z(-1.0, 1.0, 0.5))
}

fn sorted(mut v: Vec<C>) -> Vec<C> {
    v.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap().then(a.im.partial_cmp(&b.im).unwrap()));
    v
}

/// Greedy matching distance between two multisets.
fn multiset_distance(a: &[C], b: &[C]) -> f64 {
    let mut pool = b.to_vec();
    let mut worst: f64 = 0.0;
    for x in a {
        let (idx, d) = pool
            .iter()
            .enumerate()
            .map(|(i, y)| (i, (x - y).norm()))
            .min_by(|p, q| p.1.partial_cmp(&q.1).unwrap())
            .unwrap();
        worst = worst.max(d);
        pool.swap_remove(idx);
    }
    worst
}

fn closed_form_energies(n: u32, p: &AnsatzParameters<f64>) -> Vec<C> {
    let s = p.ground_energy() * (n as f64 + 1.0);
    let r = p.splitting();
    LevelSpec::allowed_m(n)
        .flat_map(|m| if m == 0 { vec![s] } else { vec![s + r * m as f64, s - r * m as f64] })
        .collect()
}

/// Hand-expanded characteristic polynomials for n = 0..4 in `s = α+β`,
/// `q = (α−β)² + 4γ²`, ascending.
fn printed_polynomial(n: u32, p: &AnsatzParameters<f64>) -> Vec<C> {
    let s = p.ground_energy();
    let d = p.alpha - p.beta;
    let q = d * d + p.gamma * p.gamma * 4.0;
    let one = cx(1.0, 0.0);
    match n {
        0 => vec![-s, one],
        1 => vec![s * s * 4.0 - q, -s * 4.0, one],
        2 => vec![-(s * s * s * 27.0 - s * q * 12.0), s * s * 27.0 - q * 4.0, -s * 9.0, one],
        3 => vec![
            s.powi(4) * 256.0 - s * s * q * 160.0 + q * q * 9.0,
            -(s.powi(3) * 256.0 - s * q * 80.0),
            s * s * 96.0 - q * 10.0,
            -s * 16.0,
            one,
        ],
        4 => vec![
            -(s.powi(5) * 3125.0 - s.powi(3) * q * 2500.0 + s * q * q * 320.0),
            s.powi(4) * 3125.0 - s * s * q * 1500.0 + q * q * 64.0,
            -(s.powi(3) * 1250.0 - s * q * 300.0),
            s * s * 250.0 - q * 20.0,
            -s * 25.0,
            one,
        ],
        _ => unreachable!(),
    }
}

#[test]
fn top_subsystem_layout() {
    let sub = TopSubsystem::new(2, &params(2.0, 1.0, 0.5));
    let diag: Vec<f64> = sub.diag().iter().map(|z| z.re).collect();
    assert_eq!(diag, vec![7.0, 9.0, 11.0]);
    let upper: Vec<f64> = sub.upper().iter().map(|z| z.re).collect();
    let lower: Vec<f64> = sub.lower().iter().map(|z| z.re).collect();
    assert_eq!(upper, vec![-1.0, -2.0]);
    assert_eq!(lower, vec![-2.0, -1.0]);
    let dense = sub.to_dense();
    assert_eq!(dense[0][1].re, -1.0);
    assert_eq!(dense[1][0].re, -2.0);
    assert_eq!(dense[0][2].re, 0.0);
    assert_eq!(sub.lambda(1, cx(10.0, 0.0)).re, 1.0);
}

#[test]
fn n2_decoupled_energies() {
    let e = energies_from_subsystem(2, &params(2.0, 1.0, 0.0)).unwrap();
    assert!(e.is_clean());
    let re: Vec<f64> = e.value.iter().map(|z| z.re).collect();
    assert_eq!(re, vec![7.0, 9.0, 11.0]);
}

#[test]
fn n1_coupled_energies() {
    let e = energies_from_subsystem(1, &params(1.0, 1.0, 1.0)).unwrap().value;
    assert!((e[0] - cx(2.0, 0.0)).norm() < 1e-14);
    assert!((e[1] - cx(6.0, 0.0)).norm() < 1e-14);
}

#[test]
fn n4_matches_printed_quintic_roots() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..50 {
        let p = random_params(&mut rng);
        let poly = printed_polynomial(4, &p);
        let roots = quintic_roots(&poly);
        let ours = energies_from_subsystem(4, &p).unwrap().value;
        let scale = ours.iter().map(|z| z.norm()).fold(1.0, f64::max);
        assert!(multiset_distance(&ours, &roots) < 1e-9 * scale, "{p:?}");
    }
}

/// Durand–Kerner on a monic ascending polynomial; independent of the subsystem code.
fn quintic_roots(poly: &[C]) -> Vec<C> {
    let deg = poly.len() - 1;
    let mut z: Vec<C> = (0..deg).map(|k| cx(0.4, 0.9).powi(k as i32) * 10.0).collect();
    for _ in 0..2000 {
        for i in 0..deg {
            let num = eval_polynomial(poly, z[i]);
            let den = (0..deg).filter(|&j| j != i).fold(cx(1.0, 0.0), |acc, j| acc * (z[i] - z[j]));
            z[i] -= num / den;
        }
    }
    // Newton polish
    for zi in z.iter_mut() {
        for _ in 0..3 {
            let dp: Vec<C> = poly.iter().enumerate().skip(1).map(|(k, c)| c * k as f64).collect();
            let step = eval_polynomial(poly, *zi) / eval_polynomial(&dp, *zi);
            if step.norm().is_finite() {
                *zi -= step;
            }
        }
    }
    z
}

#[test]
fn polynomial_matches_printed_forms() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..50 {
        let p = random_params(&mut rng);
        for n in 0..=4 {
            let ours = energy_polynomial(n, &p).unwrap();
            assert!(ours.is_clean());
            let printed = printed_polynomial(n, &p);
            assert_eq!(ours.value.len(), printed.len());
            let scale = printed.iter().map(|z| z.norm()).fold(1.0, f64::max);
            for (a, b) in ours.value.iter().zip(&printed) {
                assert!((a - b).norm() < 1e-11 * scale, "n={n}: {a} vs {b}");
            }
        }
    }
}

#[test]
fn polynomial_examples() {
    let p = params(2.0, 1.0, 0.0);
    let poly = energy_polynomial(0, &p).unwrap().value;
    assert_eq!(poly, vec![cx(-3.0, 0.0), cx(1.0, 0.0)]);
    let poly = energy_polynomial(2, &p).unwrap().value;
    for e in [7.0, 9.0, 11.0] {
        assert!(eval_polynomial(&poly, cx(e, 0.0)).norm() < 1e-10);
    }
    assert!(energy_polynomial(DEFAULT_MAX_LEVEL + 1, &p).is_err());
}

#[test]
fn polynomial_overflow_flagged() {
    let p = params(1e30, 1e30, 1e30);
    assert!(energy_polynomial(16, &p).unwrap().has(Advisory::Overflow));
}

#[test]
fn subsystem_matches_closed_form_and_dense_polynomial() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..100 {
        let p = random_params(&mut rng);
        for n in 0..=10 {
            let ours = energies_from_subsystem(n, &p).unwrap().value;
            assert_eq!(ours.len(), n as usize + 1);
            let expected = closed_form_energies(n, &p);
            let scale = expected.iter().map(|z| z.norm()).fold(1.0, f64::max);
            assert!(multiset_distance(&ours, &expected) < 1e-8 * scale, "n={n} {p:?}");
        }
    }
}

#[test]
fn symmetric_under_exchange_and_gamma_sign() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..20 {
        let p = random_params(&mut rng);
        let swapped = AnsatzParameters::new(p.beta, p.alpha, p.gamma);
        let flipped = AnsatzParameters::new(p.alpha, p.beta, -p.gamma);
        for n in 0..=6 {
            let base = energies_from_subsystem(n, &p).unwrap().value;
            let scale = base.iter().map(|z| z.norm()).fold(1.0, f64::max);
            for q in [&swapped, &flipped] {
                let other = energies_from_subsystem(n, q).unwrap().value;
                assert!(multiset_distance(&base, &other) < 1e-10 * scale);
            }
        }
    }
}

#[test]
fn exceptional_parameters_flagged() {
    // (α−β)² + 4γ² = 0 with γ ≠ 0: a Jordan block
    let p = AnsatzParameters::new(cx(1.0, 0.0), cx(1.0, 0.0), cx(0.0, 0.0));
    assert!(energies_from_subsystem(4, &p).unwrap().is_clean());
    let p = AnsatzParameters::new(cx(2.0, 0.0), cx(1.0, 0.0), cx(0.0, 0.5));
    let e = energies_from_subsystem(4, &p).unwrap();
    assert!(e.has(Advisory::IllConditioned));
    for z in e.value {
        assert!((z - cx(15.0, 0.0)).norm() < 1e-2);
    }
}

#[test]
fn rejects_non_finite_parameters() {
    let p = AnsatzParameters::new(cx(f64::NAN, 0.0), cx(1.0, 0.0), cx(0.0, 0.0));
    assert!(energies_from_subsystem(2, &p).is_err());
}

#[test]
fn spectral_energies_satisfy_the_polynomial() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let mut checked = 0;
    while checked < 300 {
        let nu = rng.gen_range(0.5..3.0);
        let omega = rng.gen_range(0.5..3.0);
        let freqs = Frequencies::new(nu, omega).unwrap();
        let g = cx(rng.gen_range(-6.0..6.0), rng.gen_range(-6.0..6.0));
        let sheet = SheetLabel::ALL[rng.gen_range(0..8)];
        let Ok(p) = ansatz_parameters(&freqs, g, sheet) else { continue };
        let n = rng.gen_range(0..=6);
        let poly = energy_polynomial(n, &p).unwrap().value;
        for level in LevelSpec::all(n) {
            let e = energy(&freqs, level, sheet, g);
            let scale: f64 = poly.iter().enumerate().map(|(k, c)| c.norm() * e.norm().powi(k as i32)).sum();
            assert!(eval_polynomial(&poly, e).norm() < 1e-9 * scale);
        }
        checked += 1;
    }
}

#[test]
fn mn_row_examples() {
    let freqs = Frequencies::new(2.0, 1.0).unwrap();
    let g = cx(1.0, 0.0);
    let p = ansatz_parameters(&freqs, g, SheetLabel::CONVENTIONAL).unwrap();
    let e = cx(3.5, 0.25);

    let mut t = CoefficientTable::zeros(0);
    t.set(0, 0, cx(1.0, 0.0));
    let row = build_mn_row(0, 0, 0, &p, &freqs, g, e, &t).unwrap();
    assert!((row - (e - p.alpha - p.beta)).norm() < 1e-14);

    let mut t = CoefficientTable::zeros(1);
    let (a10, a01) = (cx(0.3, 0.1), cx(-0.7, 0.2));
    t.set(1, 0, a10);
    t.set(0, 1, a01);
    let row10 = build_mn_row(1, 1, 0, &p, &freqs, g, e, &t).unwrap();
    let row01 = build_mn_row(1, 0, 1, &p, &freqs, g, e, &t).unwrap();
    let want10 = a10 * (e - p.alpha * 3.0 - p.beta) + a01 * p.gamma * 2.0;
    let want01 = a01 * (e - p.alpha - p.beta * 3.0) + a10 * p.gamma * 2.0;
    assert!((row10 - want10).norm() < 1e-13);
    assert!((row01 - want01).norm() < 1e-13);

    let zero = CoefficientTable::zeros(3);
    for (j, k) in [(0, 0), (1, 2), (3, 0)] {
        assert_eq!(build_mn_row(3, j, k, &p, &freqs, g, e, &zero).unwrap(), cx(0.0, 0.0));
    }
    assert!(build_mn_row(1, 1, 1, &p, &freqs, g, e, &zero).is_err());
}

#[test]
fn mn_row_keeps_relation_terms_off_shell() {
    // parameters that do not satisfy the relations leave the curvature terms
    let freqs = Frequencies::new(2.0, 1.0).unwrap();
    let p = params(1.0, 1.0, 0.0);
    let mut t = CoefficientTable::zeros(2);
    t.set(0, 0, cx(1.0, 0.0));
    let row = build_mn_row(2, 2, 0, &p, &freqs, cx(0.0, 0.0), cx(0.0, 0.0), &t).unwrap();
    assert!((row - cx(1.0 - 4.0, 0.0)).norm() < 1e-14);
}

#[test]
fn coefficients_examples() {
    let one = cx(1.0, 0.0);
    let t = solve_coefficients(0, &params(2.0, 1.0, 0.0), cx(3.0, 0.0)).unwrap().value;
    assert_eq!(t.get(0, 0), one);

    let p = params(2.0, 1.0, 0.0);
    let y_state = solve_coefficients(1, &p, cx(5.0, 0.0)).unwrap().value;
    assert!((y_state.get(0, 1) - one).norm() < 1e-14);
    assert!(y_state.get(1, 0).norm() < 1e-14 && y_state.get(0, 0).norm() < 1e-14);
    let x_state = solve_coefficients(1, &p, cx(7.0, 0.0)).unwrap().value;
    assert!((x_state.get(1, 0) - one).norm() < 1e-14);
    assert!(x_state.get(0, 1).norm() < 1e-14 && x_state.get(0, 0).norm() < 1e-14);

    assert!(matches!(solve_coefficients(1, &p, cx(6.0, 0.0)), Err(Error::NotAnEigenvalue { .. })));
}

#[test]
fn coefficients_at_coupling_one() {
    let freqs = Frequencies::new(2.0, 1.0).unwrap();
    let g = cx(1.0, 0.0);
    let sheet = SheetLabel::CONVENTIONAL;
    let p = ansatz_parameters(&freqs, g, sheet).unwrap();
    let level = LevelSpec::new(1, 1).unwrap();
    for s in [sheet, SheetLabel { diff: sheet.diff.flip(), ..sheet }] {
        let e = energy(&freqs, level, s, g);
        let table = solve_coefficients(1, &p, e).unwrap();
        assert!(table.is_clean());
        for (j, k) in [(0, 0), (1, 0), (0, 1)] {
            let r = build_mn_row(1, j, k, &p, &freqs, g, e, &table.value).unwrap();
            assert!(r.norm() < 1e-10);
        }
        let top = table.value.top_row();
        let peak = top.iter().map(|z| z.norm()).fold(0.0, f64::max);
        assert!((peak - 1.0).abs() < 1e-15);
    }
}

#[test]
fn degenerate_nullspace_flagged() {
    let t = solve_coefficients(1, &params(1.0, 1.0, 0.0), cx(4.0, 0.0)).unwrap();
    assert!(t.has(Advisory::DegenerateNullspace));
}

#[test]
fn coefficients_have_small_row_residuals() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..30 {
        let p = random_params(&mut rng);
        for n in 0..=6 {
            for e in energies_from_subsystem(n, &p).unwrap().value {
                let table = solve_coefficients(n, &p, e).unwrap().value;
                let m = system_matrix_for_tests(n, &p, e);
                let worst = m
                    .iter()
                    .map(|row| {
                        let s: C = row.iter().zip(table.as_slice()).map(|(a, b)| a * b).sum();
                        s.norm()
                    })
                    .fold(0.0, f64::max);
                let scale = m.iter().flatten().map(|z| z.norm()).fold(1.0, f64::max);
                assert!(worst < 1e-9 * scale, "n={n}");
            }
        }
    }
}

#[test]
fn wavefunction_examples() {
    let p = params(2.0, 1.0, 0.0);
    let x_state = solve_coefficients(1, &p, cx(7.0, 0.0)).unwrap().value;
    let v = evaluate_wavefunction(&x_state, &p, 1.0, 0.0);
    assert!((v - cx((-1.0f64).exp(), 0.0)).norm() < 1e-15);
    let ground = solve_coefficients(0, &p, cx(3.0, 0.0)).unwrap().value;
    assert_eq!(evaluate_wavefunction(&ground, &p, 0.0, 0.0), cx(1.0, 0.0));
}

/// `(H − E)ψ` by a fourth-order finite-difference Laplacian.
fn schrodinger_residual(
    freqs: &Frequencies<f64>,
    g: f64,
    e: C,
    psi: impl Fn(f64, f64) -> C,
    x: f64,
    y: f64,
) -> (f64, f64) {
    let h = 5e-3;
    let d2 = |f: &dyn Fn(f64) -> C| {
        (-f(2.0 * h) + f(h) * 16.0 - f(0.0) * 30.0 + f(-h) * 16.0 - f(-2.0 * h)) / (12.0 * h * h)
    };
    let lap = d2(&|t| psi(x + t, y)) + d2(&|t| psi(x, y + t));
    let v = freqs.nu().powi(2) * x * x + freqs.omega().powi(2) * y * y + g * x * y;
    let p = psi(x, y);
    let r = -lap + p * v - p * e;
    (r.norm(), (p * e).norm().max(lap.norm()))
}

#[test]
fn eigenfunctions_solve_the_schrodinger_equation() {
    let freqs = Frequencies::new(2.0, 1.0).unwrap();
    let g = 1.3;
    for sheet in [SheetLabel::CONVENTIONAL, "+-+".parse().unwrap(), "-++".parse().unwrap()] {
        let p = ansatz_parameters(&freqs, cx(g, 0.0), sheet).unwrap();
        for n in 0..=3 {
            for level in LevelSpec::all(n) {
                let e = energy(&freqs, level, sheet, cx(g, 0.0));
                let table = solve_coefficients(n, &p, e).unwrap().value;
                let psi = |x: f64, y: f64| evaluate_wavefunction(&table, &p, x, y);
                for (x, y) in [(0.3, -0.2), (-0.5, 0.7), (0.9, 0.4)] {
                    let (r, scale) = schrodinger_residual(&freqs, g, e, psi, x, y);
                    assert!(r < 1e-6 * scale.max(1.0), "{sheet} n={n} r={r} scale={scale}");
                }
            }
        }
    }
}

#[test]
fn f32_agrees_with_f64() {
    let p32 = AnsatzParameters::<f32>::real(2.0, 1.0, 0.3);
    let p64 = params(2.0, 1.0, 0.3);
    let a = energies_from_subsystem(3, &p32).unwrap().value;
    let b = energies_from_subsystem(3, &p64).unwrap().value;
    for (x, y) in a.iter().zip(&b) {
        assert!(((x.re as f64) - y.re).abs() < 1e-4);
    }
}

proptest! {
    #[test]
    fn subsystem_count_and_trace(
        a in 0.5f64..3.0, b in 0.5f64..3.0, c in -1.0f64..1.0, ai in -0.5f64..0.5, n in 0u32..=10
    ) {
        let p = AnsatzParameters::new(cx(a, ai), cx(b, 0.0), cx(c, 0.0));
        let e = energies_from_subsystem(n, &p).unwrap().value;
        prop_assert_eq!(e.len(), n as usize + 1);
        let trace: C = TopSubsystem::new(n, &p).diag().iter().sum();
        let sum: C = e.iter().sum();
        prop_assert!((trace - sum).norm() < 1e-9 * trace.norm());
        prop_assert_eq!(sorted(e.clone()), e);
    }
}
