use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rwclab::eisenstein::*;
use rwclab::Complex64;
use rwclab_oracle::Oracle;

#[test]
fn modular_invariance_random_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for t in [8.0, 16.0, 32.0] {
        let ev = EisensteinEvaluator::new(t).unwrap();
        for _ in 0..25 {
            let z = Point::new(rng.gen_range(-0.5..0.5), rng.gen_range(0.4..2.0));
            let a = ev.eval_e(z).unwrap();
            let b = ev.eval_e(z.invert()).unwrap();
            assert!((a - b).norm() <= 1e-7 * a.norm().max(1.0), "T={t}, z={z:?}: {a} vs {b}");
        }
    }
}

#[test]
fn modular_invariance_fixed_point() {
    let ev = EisensteinEvaluator::new(12.0).unwrap();
    let z = Point::new(0.2, 1.1);
    let a = ev.eval_e(z).unwrap();
    let b = ev.eval_e(z.invert()).unwrap();
    assert!((a - b).norm() < 1e-7 * a.norm().max(1.0));
}

#[test]
fn periodicity() {
    let ev = EisensteinEvaluator::new(12.0).unwrap();
    let a = ev.eval_e(Point::new(0.13, 0.9)).unwrap();
    let b = ev.eval_e(Point::new(1.13, 0.9)).unwrap();
    assert!((a - b).norm() < 1e-9);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..10 {
        let z = Point::new(rng.gen_range(-0.5..0.5), rng.gen_range(0.5..3.0));
        let k = rng.gen_range(-5..=5) as f64;
        let a = ev.eval_e(z).unwrap();
        let b = ev.eval_e(Point::new(z.x + k, z.y)).unwrap();
        assert!((a - b).norm() < 1e-9 * a.norm().max(1.0));
    }
}

#[test]
fn conjugation_symmetry() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for t in [6.0, 19.5] {
        let p = EisensteinEvaluator::new(t).unwrap();
        let m = EisensteinEvaluator::new(-t).unwrap();
        for _ in 0..10 {
            let z = Point::new(rng.gen_range(-0.5..0.5), rng.gen_range(0.5..3.0));
            let a = p.eval_e(z).unwrap();
            let b = m.eval_e(z).unwrap();
            assert!((a.norm() - b.norm()).abs() < 1e-9 * a.norm().max(1.0));
            assert!((a.conj() - b).norm() < 1e-9 * a.norm().max(1.0));
        }
    }
}

#[test]
fn scattering_phase_matches_oracle() {
    let mut o = Oracle::with_digits(50);
    let (re, im) = o.scattering_phi(1.0);
    let p = scattering_phi(1.0).unwrap();
    assert!((p - Complex64::new(re, im)).norm() < 1e-13);
    assert!((re - 0.523_127_151_694_381_22).abs() < 1e-15);
    for t in [5.0, 15.0, 40.0] {
        let p = scattering_phi(t).unwrap();
        assert!(((p * p.conj()).re - 1.0).abs() < 1e-9);
    }
}

#[test]
fn row_decay_and_cache() {
    let ev = EisensteinEvaluator::new(20.0).unwrap();
    let n = truncation_length(20.0, 1.0);
    let row = ev.fourier_row(1.0, n).unwrap();
    assert!((row[n - 1] / row[0]).abs() < 1e-12, "{}", row[n - 1] / row[0]);

    let ev = EisensteinEvaluator::new(10.0).unwrap();
    let a = ev.default_row(2.0).unwrap();
    let b = ev.default_row(2.0).unwrap();
    assert_eq!(&a[..], &b[..]);
    assert_eq!(ev.cached_rows(), 1);
    let fresh = EisensteinEvaluator::new(10.0).unwrap().default_row(2.0).unwrap();
    assert_eq!(&a[..], &fresh[..]);
}

#[test]
fn doubling_truncation_is_invisible() {
    let ev = EisensteinEvaluator::new(13.0).unwrap();
    for z in [Point::new(0.0, 1.0), Point::new(0.31, 0.3), Point::new(-0.2, 2.5)] {
        let n = truncation_length(13.0, z.y);
        let a = ev.eval_e_truncated(z, n).unwrap();
        let b = ev.eval_e_truncated(z, 2 * n).unwrap();
        assert!((a - b).norm() < 1e-10, "{z:?}");
    }
}

/// E(i, ½+13i) assembled from the multiprecision oracle's ξ and K with twice
/// the default truncation.
#[test]
fn value_at_i_matches_oracle_assembly() {
    let t = 13.0;
    let mut o = Oracle::with_digits(50);
    let (lr, li) = o.xi_f64(1.0, 2.0 * t);
    let xi = Complex64::new(lr, li);
    let (pr, pi) = o.scattering_phi(t);
    let phi = Complex64::new(pr, pi);
    let y: f64 = 1.0;
    let mut e = (Complex64::new(0.5, t) * y.ln()).exp() + phi * (Complex64::new(0.5, -t) * y.ln()).exp();
    let n_max = 2 * truncation_length(t, y);
    // Unscaled K: e^{-πT/2} factor applied to the oracle's scaled value.
    let damp = (-std::f64::consts::FRAC_PI_2 * t).exp();
    for n in 1..=n_max {
        let k = Oracle::bessel_k_imag_scaled_auto(t, std::f64::consts::TAU * n as f64 * y) * damp;
        let tau = rwclab::arith::tau_shifted(n as i64, 0.5 * t).unwrap();
        e += 4.0 * y.sqrt() * tau * k / xi;
    }
    let ours = eval_e(t, Point::new(0.0, 1.0)).unwrap();
    assert!((ours - e).norm() < 1e-10 * e.norm().max(1.0), "{ours} vs {e}");
}

#[test]
fn scaled_rows_stay_in_range() {
    for t in [8.0, 32.0, 64.0] {
        let ev = EisensteinEvaluator::new(t).unwrap();
        let (log_rho, _) = ev.xi_scaled();
        assert!(log_rho.abs() < 30.0 * std::f64::consts::LN_10);
        for y in [0.1, 0.5, 1.0, 4.0] {
            let row = ev.default_row(y).unwrap();
            assert!(row.iter().all(|b| b.is_finite() && b.abs() < 1e30));
        }
    }
}
