use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_741_780_329_736_405_6;

/// B_{2k} / (2k(2k-1)) for k = 1..=10.
const STIRLING: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
    43867.0 / 244188.0,
    -174611.0 / 125400.0,
];

fn is_nonpositive_integer(s: Complex64) -> bool {
    s.im.abs() < 1e-12 && s.re < 0.5 && (s.re - s.re.round()).abs() < 1e-12
}

/// ln Γ(s) on the branch continuous in the right half-plane
/// (matching the usual `loggamma` convention there).
pub fn log_gamma_complex(s: Complex64) -> Result<Complex64> {
    if !(s.re.is_finite() && s.im.is_finite()) {
        return Err(Error::domain("log_gamma_complex", format!("non-finite argument {s}")));
    }
    if is_nonpositive_integer(s) {
        return Err(Error::pole("log_gamma_complex", s));
    }
    if s.re < 0.5 {
        // Γ(s)Γ(1-s) = π / sin(πs)
        let rest = log_gamma_right(Complex64::new(1.0, 0.0) - s);
        return Ok(Complex64::new(PI.ln(), 0.0) - log_sin_pi(s) - rest);
    }
    Ok(log_gamma_right(s))
}

fn log_gamma_right(s: Complex64) -> Complex64 {
    let mut z = s;
    let mut shift = Complex64::new(0.0, 0.0);
    while z.re < 15.0 && z.im.abs() < 15.0 {
        shift += z.ln();
        z += 1.0;
    }
    let zinv = z.inv();
    let zinv2 = zinv * zinv;
    let mut series = Complex64::new(0.0, 0.0);
    let mut p = zinv;
    for c in STIRLING {
        series += p * c;
        p *= zinv2;
    }
    (z - 0.5) * z.ln() - z + LN_SQRT_2PI + series - shift
}

/// ln sin(πz), stable for large |Im z| (any branch; callers exponentiate
/// or take real parts).
pub fn log_sin_pi(z: Complex64) -> Complex64 {
    let k = (z.re * 0.5).round() * 2.0;
    let z = Complex64::new(z.re - k, z.im);
    let i = Complex64::i();
    if z.im > 1.0 {
        // sin(πz) = e^{-iπz}(e^{2iπz} - 1)/(2i)
        let e = (i * 2.0 * PI * z).exp();
        -i * PI * z + (e - 1.0).ln() - Complex64::new(2.0f64.ln(), PI / 2.0)
    } else if z.im < -1.0 {
        // sin(πz) = e^{iπz}(1 - e^{-2iπz})/(2i)
        let e = (-i * 2.0 * PI * z).exp();
        i * PI * z + (-e + 1.0).ln() - Complex64::new(2.0f64.ln(), PI / 2.0)
    } else {
        (z * PI).sin().ln()
    }
}

/// ln cos(πz), via cos(πz) = sin(π(z + ½)).
pub fn log_cos_pi(z: Complex64) -> Complex64 {
    log_sin_pi(z + 0.5)
}

/// Γ(s). Refuses |Re s| > 170, where the value leaves double range;
/// use [`log_gamma_complex`] there.
pub fn gamma_complex(s: Complex64) -> Result<Complex64> {
    if s.re.abs() > 170.0 {
        return Err(Error::OverflowRisk { function: "gamma_complex", re: s.re });
    }
    Ok(log_gamma_complex(s)?.exp())
}

/// Real-argument convenience wrapper for ln|Γ(x)|.
pub fn ln_abs_gamma(x: f64) -> Result<f64> {
    Ok(log_gamma_complex(Complex64::new(x, 0.0))?.re)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / b.norm()
    }

    #[test]
    fn trivial_values() {
        let one = gamma_complex(Complex64::new(1.0, 0.0)).unwrap();
        assert!((one - 1.0).norm() < 1e-15);
        let half = gamma_complex(Complex64::new(0.5, 0.0)).unwrap();
        assert!((half.re - PI.sqrt()).abs() < 1e-14 * PI.sqrt());
    }

    #[test]
    fn poles_and_overflow() {
        assert!(matches!(gamma_complex(Complex64::new(0.0, 0.0)), Err(Error::Pole { .. })));
        assert!(matches!(gamma_complex(Complex64::new(-3.0 + 1e-13, 0.0)), Err(Error::Pole { .. })));
        assert!(gamma_complex(Complex64::new(-3.0 + 1e-6, 0.0)).is_ok());
        assert!(matches!(gamma_complex(Complex64::new(171.0, 0.0)), Err(Error::OverflowRisk { .. })));
        assert!(log_gamma_complex(Complex64::new(171.0, 0.0)).is_ok());
    }

    #[test]
    fn reflection_region_matches_recurrence() {
        let s = Complex64::new(-2.3, 0.7);
        let a = gamma_complex(s).unwrap() * s * (s + 1.0) * (s + 2.0);
        let b = gamma_complex(s + 3.0).unwrap();
        assert!(rel(a, b) < 1e-13);
    }

    #[test]
    fn log_sin_large_imaginary() {
        let z = Complex64::new(0.3, 300.0);
        let v = log_sin_pi(z);
        // |sin(πz)| ≈ e^{π·300}/2
        assert!((v.re - (PI * 300.0 - 2.0f64.ln())).abs() < 1e-10);
    }
}
