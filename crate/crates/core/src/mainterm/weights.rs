use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::specfun::log_gamma_complex;
use crate::Complex64;

/// H(t) with its logarithm. `underflow` is set when the value is reported
/// as zero: outside |t| < 4T, or when exp(log H) is subnormal.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HWeight {
    pub value: f64,
    pub log_value: f64,
    pub underflow: bool,
}

fn ln_abs_gamma_c(re: f64, im: f64) -> Result<f64> {
    Ok(log_gamma_complex(Complex64::new(re, im))?.re)
}

/// H(t) = |Γ((½+2iT+it)/2)|² |Γ((½+2iT-it)/2)|² |Γ((½+it)/2)|⁴
///        / (|Γ((1+2iT)/2)|⁴ |Γ((1+2it)/2)|²), evaluated through log-Γ.
pub fn weight_h(t: f64, big_t: f64) -> Result<HWeight> {
    if !(big_t > 0.0) || !t.is_finite() {
        return Err(Error::domain("weight_H", format!("t = {t}, T = {big_t}")));
    }
    if t.abs() >= 4.0 * big_t {
        return Ok(HWeight { value: 0.0, log_value: f64::NEG_INFINITY, underflow: true });
    }
    let log = 2.0 * ln_abs_gamma_c(0.25, big_t + 0.5 * t)?
        + 2.0 * ln_abs_gamma_c(0.25, big_t - 0.5 * t)?
        + 4.0 * ln_abs_gamma_c(0.25, 0.5 * t)?
        - 4.0 * ln_abs_gamma_c(0.5, big_t)?
        - 2.0 * ln_abs_gamma_c(0.5, t)?;
    let value = log.exp();
    Ok(HWeight { value: if value.is_normal() { value } else { 0.0 }, log_value: log, underflow: !value.is_normal() })
}

/// Leading Stirling form 8π/(|t|(4T² - t²)^{1/2}) of H inside |t| < 2T.
pub fn weight_h_leading(t: f64, big_t: f64) -> f64 {
    let d = 4.0 * big_t * big_t - t * t;
    if t == 0.0 || d <= 0.0 {
        return 0.0;
    }
    8.0 * PI / (t.abs() * d.sqrt())
}

/// exp(-1/u)-based C^∞ step: 0 for u ≤ 0, 1 for u ≥ 1.
pub fn smooth_step(u: f64) -> f64 {
    if u <= 0.0 {
        return 0.0;
    }
    if u >= 1.0 {
        return 1.0;
    }
    let a = (-1.0 / u).exp();
    let b = (-1.0 / (1.0 - u)).exp();
    a / (a + b)
}

/// C^∞ bump: zero outside `support`, exactly 1 on `plateau`, with
/// smoothed-step ramps in between. The ramp widths are the smoothness scale.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BumpFunction {
    pub support: (f64, f64),
    pub plateau: (f64, f64),
}

impl BumpFunction {
    pub fn new(support: (f64, f64), plateau: (f64, f64)) -> Result<Self> {
        let (a, b) = support;
        let (c, d) = plateau;
        if !(a < c && c <= d && d < b) {
            return Err(Error::domain("BumpFunction", format!("support {support:?}, plateau {plateau:?}")));
        }
        Ok(BumpFunction { support, plateau })
    }

    /// Bump with equal ramps of width `ramp` inside `support`.
    pub fn with_ramp(support: (f64, f64), ramp: f64) -> Result<Self> {
        Self::new(support, (support.0 + ramp, support.1 - ramp))
    }

    pub fn eval(&self, x: f64) -> f64 {
        let (a, b) = self.support;
        let (c, d) = self.plateau;
        if x <= a || x >= b {
            0.0
        } else if x < c {
            smooth_step((x - a) / (c - a))
        } else if x > d {
            smooth_step((b - x) / (b - d))
        } else {
            1.0
        }
    }
}

/// The even cutoff Z with plateau ε ≤ |x| ≤ 1 - ε and support
/// ε² < |x| < 1 - ε², where ε = `eps_param` stands for T^{-ε}.
pub fn cutoff_z(eps_param: f64) -> Result<BumpFunction> {
    if !(eps_param > 0.0 && eps_param < 0.2) {
        return Err(Error::domain("smooth_cutoff_Z", format!("eps_param = {eps_param} not in (0, 0.2)")));
    }
    let e2 = eps_param * eps_param;
    BumpFunction::new((e2, 1.0 - e2), (eps_param, 1.0 - eps_param))
}

pub fn smooth_cutoff_z(x: f64, eps_param: f64) -> Result<f64> {
    Ok(cutoff_z(eps_param)?.eval(x.abs()))
}

/// Q(t) = Z(t/2T) / (|t|(4T² - t²)^{1/2}); zero outside the support of Z.
pub fn weight_q(t: f64, big_t: f64, eps_param: f64) -> Result<f64> {
    let z = smooth_cutoff_z(t / (2.0 * big_t), eps_param)?;
    if z == 0.0 {
        return Ok(0.0);
    }
    Ok(z / (t.abs() * (4.0 * big_t * big_t - t * t).sqrt()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z_plateau_support_and_parity() {
        assert_eq!(smooth_cutoff_z(0.5, 0.1).unwrap(), 1.0);
        assert_eq!(smooth_cutoff_z(0.0, 0.1).unwrap(), 0.0);
        assert_eq!(smooth_cutoff_z(1.0, 0.1).unwrap(), 0.0);
        for i in 0..20 {
            let x = 0.013 + 0.049 * i as f64;
            assert_eq!(smooth_cutoff_z(x, 0.15).unwrap(), smooth_cutoff_z(-x, 0.15).unwrap());
        }
        assert!(smooth_cutoff_z(0.3, 0.25).is_err());
    }

    #[test]
    fn step_is_smooth_and_monotone() {
        let mut last = 0.0;
        for i in 0..=100 {
            let v = smooth_step(i as f64 / 100.0);
            assert!(v >= last && v.is_finite());
            last = v;
        }
        assert!((smooth_step(0.5) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn q_plateau_value() {
        let t = 30.0;
        let q = weight_q(t, t, 0.1).unwrap();
        assert!((q - 1.0 / (3f64.sqrt() * t * t)).abs() < 1e-15);
        assert_eq!(weight_q(-17.0, t, 0.1).unwrap(), weight_q(17.0, t, 0.1).unwrap());
        assert_eq!(weight_q(2.0 * t, t, 0.1).unwrap(), 0.0);
        assert_eq!(weight_q(2.5 * t, t, 0.1).unwrap(), 0.0);
    }

    #[test]
    fn h_positive_and_underflow_flag() {
        for t in [0.5, 5.0, 20.0, 39.0] {
            assert!(weight_h(t, 20.0).unwrap().value > 0.0);
        }
        let far = weight_h(90.0, 20.0).unwrap();
        assert!(far.underflow && far.value == 0.0);
    }
}
