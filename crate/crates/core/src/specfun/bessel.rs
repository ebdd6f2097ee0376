//! e^{πT/2}·K_{iT}(x) for real T and x > 0.
//!
//! Two paths:
//! * the ascending series through I_{±iT} when x < max(2, T/4);
//! * elsewhere, ∫₀^∞ e^{-x cosh t} cos(Tt) dt with t moved to u + iθ.
//!
//! On the shifted line the integrand is
//! exp(T(π/2-θ) - x cosθ cosh u)·cos(Tu - x sinθ sinh u) after scaling, and θ
//! is chosen so that its modulus stays O(1): no cancellation of
//! exponentially large terms.

use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_2, PI};

use super::gamma::log_gamma_complex;
use crate::error::{Error, Result};
use crate::quad::{adaptive_gk_seeded, Adaptive};

/// Ceilings on the arguments. Values beyond them are rejected.
#[derive(Clone, Copy, Debug)]
pub struct BesselLimits {
    pub max_order: f64,
    pub max_argument: f64,
}

impl Default for BesselLimits {
    fn default() -> Self {
        BesselLimits { max_order: 256.0, max_argument: 1e6 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScaledBesselValue {
    /// e^{πT/2}·K_{iT}(x)
    pub value: f64,
    pub order: f64,
    pub argument: f64,
    /// Set when |x - T| < T^{1/3}, where the accuracy target is relaxed.
    pub turning_point: bool,
}

pub fn bessel_k_imag_scaled(t: f64, x: f64) -> Result<ScaledBesselValue> {
    bessel_k_imag_scaled_with(t, x, BesselLimits::default())
}

pub fn bessel_k_imag_scaled_with(t: f64, x: f64, limits: BesselLimits) -> Result<ScaledBesselValue> {
    if !x.is_finite() || x <= 0.0 {
        return Err(Error::domain("bessel_k_imag_scaled", format!("x = {x} must be positive")));
    }
    if !t.is_finite() {
        return Err(Error::domain("bessel_k_imag_scaled", format!("T = {t}")));
    }
    let t = t.abs();
    if t > limits.max_order {
        return Err(Error::domain("bessel_k_imag_scaled", format!("T = {t} above ceiling {}", limits.max_order)));
    }
    if x > limits.max_argument {
        return Err(Error::domain("bessel_k_imag_scaled", format!("x = {x} above ceiling {}", limits.max_argument)));
    }
    let value = if t >= 0.5 && x < 2f64.max(t / 4.0) { series(t, x)? } else { shifted_integral(t, x) };
    Ok(ScaledBesselValue {
        value,
        order: t,
        argument: x,
        turning_point: t > 0.0 && (x - t).abs() < t.cbrt(),
    })
}

/// Ascending series: K_{iT}(x) = -π Im I_{iT}(x) / sinh(πT).
fn series(t: f64, x: f64) -> Result<f64> {
    let q = 0.25 * x * x;
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut k = 1.0;
    loop {
        term *= q / (k * Complex64::new(k, t));
        sum += term;
        if term.norm() <= 1e-17 * sum.norm() {
            break;
        }
        k += 1.0;
        if k > 10_000.0 {
            return Err(Error::Convergence(format!("K_iT series at T={t}, x={x}")));
        }
    }
    let arg_gamma = log_gamma_complex(Complex64::new(1.0, t))?.im;
    let phase = Complex64::from_polar(1.0, t * (0.5 * x).ln() - arg_gamma);
    let im = (phase * sum).im;
    let norm = (2.0 / (PI * t * (-(-2.0 * PI * t).exp_m1()))).sqrt();
    Ok(-PI * norm * im)
}

fn shifted_integral(t: f64, x: f64) -> f64 {
    let delta_tp = if t > 0.0 { t.powf(-1.0 / 3.0).min(1.0) } else { 1.0 };
    let theta = if x >= t {
        (t / x).asin().min(FRAC_PI_2 - delta_tp)
    } else {
        FRAC_PI_2 - (2.0 / (t - x)).min(delta_tp)
    };
    let (s, c) = theta.sin_cos();
    let lift = t * (FRAC_PI_2 - theta);
    let xc = x * c;
    let xs = x * s;
    let peak = lift - xc;
    if peak < -745.0 {
        return 0.0;
    }
    // The envelope exp(lift - xc·cosh u) peaks at u = 0; stop 50 e-folds below.
    let cosh_end = (xc + 50.0) / xc;
    let u_end = cosh_end.max(1.0).acosh();
    let f = |u: f64| {
        let (sh, ch) = (u.sinh(), u.cosh());
        (lift - xc * ch).exp() * (t * u - xs * sh).cos()
    };
    // Roundoff floor: the largest integrand value is e^{peak}.
    let tol = Adaptive { abs_tol: 1e-14 * peak.exp().max(1e-300), rel_tol: 1e-13, max_depth: 50, max_panels: 1 << 14 };
    // Split at the stationary point of the phase so panels align with it.
    // Seed panels so each spans at most ~2 oscillations of the phase
    // Tu - x sinθ sinh u, whose speed is bounded by max(T, x sinθ cosh u).
    let seed = |lo: f64, hi: f64| {
        let speed = t.max(xs * hi.cosh());
        ((hi - lo) * speed / (4.0 * PI)).ceil() as usize + 1
    };
    if x < t {
        let u0 = (t / xs).max(1.0).acosh().min(u_end);
        let (a, _) = adaptive_gk_seeded(&f, 0.0, u0, seed(0.0, u0), tol);
        let (b, _) = adaptive_gk_seeded(&f, u0, u_end, seed(u0, u_end), tol);
        a + b
    } else {
        adaptive_gk_seeded(&f, 0.0, u_end, seed(0.0, u_end), tol).0
    }
}
