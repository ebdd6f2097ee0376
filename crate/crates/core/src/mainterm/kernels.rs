use std::cell::RefCell;
use std::f64::consts::{LN_2, PI};

use crate::error::{Error, Result};
use crate::quad::ContourSpec;
use crate::specfun::{log_cos_pi, log_gamma_complex};
use crate::Complex64;

/// Default line for the V-kernels: Re s = 0.5, |Im s| ≤ 10, step 1/64.
pub const KERNEL_CONTOUR: ContourSpec = ContourSpec::new(0.5, 10.0, 1.0 / 64.0);

/// Largest admissible |integrand| at the truncation points.
const TAIL_LIMIT: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KernelKind {
    /// Divisor function τ(n): kernels G₁±.
    Tau,
    /// Shifted divisor function τ(m, 2T): kernels G₂±.
    TauShifted,
}

/// ln Γ_R(z) = -(z/2) ln π + ln Γ(z/2).
fn log_gamma_r(z: Complex64) -> Result<Complex64> {
    Ok(-z * 0.5 * PI.ln() + log_gamma_complex(z * 0.5)?)
}

/// (1/2πi) ∫ e^{s²} x^{-s} e^{L(s)} ds/s along `contour`, as a real number.
fn mellin_cutoff<L>(name: &'static str, x: f64, contour: &ContourSpec, poles: &[f64], log_ratio: L) -> Result<f64>
where
    L: Fn(Complex64) -> Result<Complex64>,
{
    if !(x > 0.0) {
        return Err(Error::domain(name, format!("x = {x}")));
    }
    contour.validate_avoiding(poles)?;
    let lx = x.ln();
    let failure = RefCell::new(None);
    let (v, tail) = contour.integrate(|s| match log_ratio(s) {
        Ok(l) => (s * s - s * lx + l).exp() / s,
        Err(e) => {
            failure.borrow_mut().get_or_insert(e);
            Complex64::new(0.0, 0.0)
        }
    });
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    if tail > TAIL_LIMIT {
        return Err(Error::Contour { tail, limit: TAIL_LIMIT });
    }
    if v.im.abs() > 1e-9 * v.re.abs().max(1.0) {
        return Err(Error::Invariant(format!("{name}: imaginary residue {:e}", v.im)));
    }
    Ok(v.re)
}

/// V₁^{even/odd}(x, t) with the squared Γ_R quotient at shift ½ (even) or
/// 3/2 (odd).
pub fn kernel_v1(x: f64, t: f64, parity: Parity, contour: &ContourSpec) -> Result<f64> {
    if t.abs() < 1.0 {
        return Err(Error::domain("kernel_V1", format!("|t| = {} below 1", t.abs())));
    }
    let a = match parity {
        Parity::Even => 0.5,
        Parity::Odd => 1.5,
    };
    let base = log_gamma_r(Complex64::new(a, t))? + log_gamma_r(Complex64::new(a, -t))?;
    let poles = [0.0, -a, -a - 2.0, -a - 4.0];
    mellin_cutoff("kernel_V1", x, contour, &poles, |s| {
        let num = log_gamma_r(s + Complex64::new(a, t))? + log_gamma_r(s + Complex64::new(a, -t))?;
        Ok((num - base) * 2.0)
    })
}

/// V₁^{even} - V₁^{odd}.
pub fn kernel_v1_error(x: f64, t: f64, contour: &ContourSpec) -> Result<f64> {
    Ok(kernel_v1(x, t, Parity::Even, contour)? - kernel_v1(x, t, Parity::Odd, contour)?)
}

/// V₂(x, t) for the shift 2T: product of four Γ_R quotients at
/// ½ + s + i(±2T ± t).
pub fn kernel_v2(x: f64, t: f64, big_t: f64, contour: &ContourSpec) -> Result<f64> {
    if !(t.abs() < 2.0 * big_t - 1.0) {
        return Err(Error::domain("kernel_V2", format!("|t| = {} not below 2T - 1 = {}", t.abs(), 2.0 * big_t - 1.0)));
    }
    let shifts = [2.0 * big_t + t, 2.0 * big_t - t, -2.0 * big_t + t, -2.0 * big_t - t];
    let mut base = Complex64::new(0.0, 0.0);
    for &u in &shifts {
        base += log_gamma_r(Complex64::new(0.5, u))?;
    }
    let poles = [0.0, -0.5, -2.5, -4.5];
    mellin_cutoff("kernel_V2", x, contour, &poles, |s| {
        let mut num = Complex64::new(0.0, 0.0);
        for &u in &shifts {
            num += log_gamma_r(s + Complex64::new(0.5, u))?;
        }
        Ok(num - base)
    })
}

/// Leading-order kernel V(x) = (1/2πi) ∫ e^{s²} (4π²x)^{-s} ds/s.
pub fn kernel_v(x: f64, contour: &ContourSpec) -> Result<f64> {
    let shift = (4.0 * PI * PI).ln();
    mellin_cutoff("kernel_V", x, contour, &[0.0], |s| Ok(-s * shift))
}

fn near_pole(z: Complex64) -> bool {
    z.re < 0.05 && (z.re - z.re.round()).abs() < 0.05 && z.im.abs() < 0.05
}

/// ln cosh(x) without forming cosh.
fn log_cosh(x: f64) -> f64 {
    let a = x.abs();
    a + (-2.0 * a).exp().ln_1p() - LN_2
}

/// ln G(s) for G₁± (kind = Tau) or G₂± (kind = TauShifted):
///   G₁±(s) = 2(2π)^{-2s} Γ(s)² cos^{(1∓1)/2}(πs)
///   G₂±(s) = 2(2π)^{-2s} Γ(s-2Ti)Γ(s+2Ti) cos^{(1∓1)/2}(πs) cosh^{(1±1)/2}(2πT)
pub fn log_kernel_g(s: Complex64, sign: Sign, kind: KernelKind, big_t: f64) -> Result<Complex64> {
    let mut l = Complex64::new(LN_2, 0.0) - s * (2.0 * (2.0 * PI).ln());
    match kind {
        KernelKind::Tau => {
            if near_pole(s) {
                return Err(Error::pole("kernel_G", s));
            }
            l += log_gamma_complex(s)? * 2.0;
        }
        KernelKind::TauShifted => {
            let shift = Complex64::new(0.0, 2.0 * big_t);
            if near_pole(s - shift) || near_pole(s + shift) {
                return Err(Error::pole("kernel_G", s));
            }
            l += log_gamma_complex(s - shift)? + log_gamma_complex(s + shift)?;
            if sign == Sign::Plus {
                l += log_cosh(2.0 * PI * big_t);
            }
        }
    }
    if sign == Sign::Minus {
        l += log_cos_pi(s);
    }
    Ok(l)
}

pub fn kernel_g(s: Complex64, sign: Sign, kind: KernelKind, big_t: f64) -> Result<Complex64> {
    Ok(log_kernel_g(s, sign, kind, big_t)?.exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g1_at_one() {
        // G₁⁺(1) = 2/(4π²), G₁⁻(1) = -2/(4π²).
        let p = kernel_g(Complex64::new(1.0, 0.0), Sign::Plus, KernelKind::Tau, 0.0).unwrap();
        let m = kernel_g(Complex64::new(1.0, 0.0), Sign::Minus, KernelKind::Tau, 0.0).unwrap();
        let want = 2.0 / (4.0 * PI * PI);
        assert!((p.re - want).abs() < 1e-15 && p.im.abs() < 1e-15);
        assert!((m.re + want).abs() < 1e-15 && m.im.abs() < 1e-14);
    }

    #[test]
    fn g2_reduces_to_g1_at_zero_shift() {
        let s = Complex64::new(0.4, 2.3);
        for sign in [Sign::Plus, Sign::Minus] {
            let a = kernel_g(s, sign, KernelKind::Tau, 0.0).unwrap();
            let b = kernel_g(s, sign, KernelKind::TauShifted, 0.0).unwrap();
            assert!((a - b).norm() < 1e-14 * a.norm());
        }
    }

    #[test]
    fn g_poles() {
        assert!(kernel_g(Complex64::new(-1.02, 0.0), Sign::Plus, KernelKind::Tau, 0.0).is_err());
        assert!(kernel_g(Complex64::new(0.01, 6.0), Sign::Plus, KernelKind::TauShifted, 3.0).is_err());
    }

    #[test]
    fn contour_rejects_pole_abscissa() {
        let c = ContourSpec::new(0.02, 10.0, 1.0 / 64.0);
        assert!(kernel_v(1.0, &c).is_err());
        let short = ContourSpec::new(0.5, 4.0, 1.0 / 64.0);
        assert!(kernel_v(1.0, &short).is_err());
    }

    #[test]
    fn log_cosh_large() {
        assert!((log_cosh(1000.0) - (1000.0 - LN_2)).abs() < 1e-12);
        assert!((log_cosh(0.3) - 0.3f64.cosh().ln()).abs() < 1e-15);
    }
}
