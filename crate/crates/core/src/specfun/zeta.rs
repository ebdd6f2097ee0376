use num_complex::Complex64;
use std::f64::consts::PI;

use super::gamma::{log_gamma_complex, log_sin_pi};
use crate::error::{Error, Result};

/// Numerators and denominators of B_2, B_4, ..., B_32.
const BERNOULLI: [(f64, f64); 16] = [
    (1.0, 6.0),
    (-1.0, 30.0),
    (1.0, 42.0),
    (-1.0, 30.0),
    (5.0, 66.0),
    (-691.0, 2730.0),
    (7.0, 6.0),
    (-3617.0, 510.0),
    (43867.0, 798.0),
    (-174611.0, 330.0),
    (854513.0, 138.0),
    (-236364091.0, 2730.0),
    (8553103.0, 6.0),
    (-23749461029.0, 870.0),
    (8615841276005.0, 14322.0),
    (-7709321041217.0, 510.0),
];

/// Maximum number of Bernoulli correction terms accepted by [`zeta_em`].
pub const MAX_EM_TERMS: usize = BERNOULLI.len();

/// Default Euler–Maclaurin cutoff for ζ(s).
pub fn default_cutoff(s: Complex64) -> usize {
    (2.0 * s.im.abs()).ceil().max(20.0) as usize
}

/// Default number of Bernoulli correction terms.
pub const DEFAULT_EM_TERMS: usize = 8;

/// ζ(s) by Euler–Maclaurin summation with cutoff `n` and `terms` Bernoulli
/// corrections. No reflection; accurate wherever the tail is small.
pub fn zeta_em(s: Complex64, n: usize, terms: usize) -> Result<Complex64> {
    if (s - 1.0).norm() < 1e-12 {
        return Err(Error::pole("zeta_complex", s));
    }
    if terms > MAX_EM_TERMS || n < 2 {
        return Err(Error::domain("zeta_em", format!("cutoff {n}, terms {terms}")));
    }
    let mut head = Complex64::new(0.0, 0.0);
    let mut comp = Complex64::new(0.0, 0.0);
    for k in 1..n {
        let v = (-s * (k as f64).ln()).exp();
        let y = v - comp;
        let t = head + y;
        comp = (t - head) - y;
        head = t;
    }
    let nf = n as f64;
    let ln_n = nf.ln();
    let n_pow = (-s * ln_n).exp();
    let mut sum = head + n_pow * nf / (s - 1.0) + n_pow * 0.5;

    // T_k = B_{2k}/(2k)! · s(s+1)···(s+2k-2) · N^{-s-2k+1}
    let mut rising = s;
    let mut npow = n_pow / nf;
    let mut fact = 2.0;
    for k in 1..=terms {
        let (num, den) = BERNOULLI[k - 1];
        sum += rising * npow * (num / den / fact);
        let a = 2.0 * k as f64;
        rising *= (s + (a - 1.0)) * (s + a);
        npow /= nf * nf;
        fact *= (a + 1.0) * (a + 2.0);
    }
    Ok(sum)
}

/// ζ(s) for complex s ≠ 1. Uses Euler–Maclaurin with cutoff
/// max(20, 2|Im s|) and 8 correction terms, reflecting for Re s < 0.
pub fn zeta_complex(s: Complex64) -> Result<Complex64> {
    if !(s.re.is_finite() && s.im.is_finite()) {
        return Err(Error::domain("zeta_complex", format!("non-finite argument {s}")));
    }
    if (s - 1.0).norm() < 1e-12 {
        return Err(Error::pole("zeta_complex", s));
    }
    if s.re < 0.0 {
        if s.im == 0.0 && s.re.fract() == 0.0 && (s.re as i64) % 2 == 0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        // ζ(s) = 2^s π^{s-1} sin(πs/2) Γ(1-s) ζ(1-s)
        let one_minus = Complex64::new(1.0, 0.0) - s;
        let log_factor = s * 2f64.ln() + (s - 1.0) * PI.ln() + log_sin_pi(s * 0.5) + log_gamma_complex(one_minus)?;
        let z = zeta_em(one_minus, default_cutoff(one_minus), DEFAULT_EM_TERMS)?;
        return Ok(log_factor.exp() * z);
    }
    zeta_em(s, default_cutoff(s), DEFAULT_EM_TERMS)
}

/// ln ξ(s) (any branch), ξ(s) = π^{-s/2} Γ(s/2) ζ(s).
pub fn log_xi(s: Complex64) -> Result<Complex64> {
    if s.norm() < 1e-12 || (s - 1.0).norm() < 1e-12 {
        return Err(Error::pole("xi_complete", s));
    }
    let half = s * 0.5;
    Ok(-half * PI.ln() + log_gamma_complex(half)? + zeta_complex(s)?.ln())
}

/// Completed zeta function ξ(s) = π^{-s/2} Γ(s/2) ζ(s).
pub fn xi_complete(s: Complex64) -> Result<Complex64> {
    if s.norm() < 1e-12 || (s - 1.0).norm() < 1e-12 {
        return Err(Error::pole("xi_complete", s));
    }
    let half = s * 0.5;
    let factor = (-half * PI.ln() + log_gamma_complex(half)?).exp();
    Ok(factor * zeta_complex(s)?)
}

/// Re ξ'/ξ(s) = ∂/∂σ log|ξ(σ + it)|, by a fourth-order central difference
/// in σ (log-moduli have no branch ambiguity).
pub fn xi_log_derivative_re(s: Complex64) -> Result<f64> {
    let h = 1e-3;
    let f = |d: f64| -> Result<f64> { Ok(log_xi(s + d)?.re) };
    Ok((-f(2.0 * h)? + 8.0 * f(h)? - 8.0 * f(-h)? + f(-2.0 * h)?) / (12.0 * h))
}

/// ζ(s) through the alternating series η(s)/(1 - 2^{1-s}) with Borwein
/// acceleration. A second double-precision route used in tests.
pub fn zeta_eta(s: Complex64) -> Result<Complex64> {
    if (s - 1.0).norm() < 1e-12 {
        return Err(Error::pole("zeta_eta", s));
    }
    // Borwein's algorithm 2: error ~ 3^{-n}·e^{π|t|/2}... n chosen generously.
    let n = (40.0 + 1.4 * s.im.abs()).ceil() as usize;
    let mut d = vec![0.0f64; n + 1];
    let mut term = 1.0 / n as f64;
    let mut acc = term;
    d[0] = acc * n as f64;
    for i in 1..=n {
        let fi = i as f64;
        term *= 4.0 * (n as f64 + fi - 1.0) * (n as f64 - fi + 1.0) / ((2.0 * fi - 1.0) * (2.0 * fi));
        acc += term;
        d[i] = acc * n as f64;
    }
    let dn = d[n];
    let mut sum = Complex64::new(0.0, 0.0);
    for k in 0..n {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let v = (-s * ((k + 1) as f64).ln()).exp();
        sum += v * (sign * (d[k] - dn));
    }
    let eta = -sum / dn;
    let denom = Complex64::new(1.0, 0.0) - ((Complex64::new(1.0, 0.0) - s) * 2f64.ln()).exp();
    Ok(eta / denom)
}
