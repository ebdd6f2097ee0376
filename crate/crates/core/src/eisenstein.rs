//! E(z, ½+iT) for SL(2, Z) through its Fourier expansion.
//!
//! Writing ξ(1+2iT) = ρ e^{iθ}, the scattering phase is φ = e^{-2iθ} and
//! E = e^{-iθ}·F with F real:
//!
//!   F(x + iy) = 2√y cos(θ + T log y) + Σ_{n≥1} b_n(y) cos(2πnx),
//!   b_n(y)    = 4√y τ(n, T) K_{iT}(2πny) / ρ,
//!
//! where τ(n, T) = Σ_{ab=n} (a/b)^{iT}. Both K_{iT} and ρ carry the factor
//! e^{-πT/2}; they are stored scaled, so every row entry is O(√y).

use num_complex::Complex64;
use std::collections::HashMap;
use std::f64::consts::{FRAC_PI_2, TAU};
use std::sync::{Arc, RwLock};

use crate::arith::tau_shifted_real;
use crate::error::{Error, Result};
use crate::specfun::{bessel_k_imag_scaled, log_xi};

/// Lowest height at which point evaluation is supported.
pub const Y_FLOOR: f64 = 0.05;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    /// z ↦ -1/z.
    pub fn invert(self) -> Self {
        let r2 = self.x * self.x + self.y * self.y;
        Point { x: -self.x / r2, y: self.y / r2 }
    }
}

/// ξ(2iT)/ξ(1+2iT).
pub fn scattering_phi(t: f64) -> Result<Complex64> {
    if !(t > 0.0) {
        return Err(Error::pole("scattering_phi", format!("T = {t}")));
    }
    let l = log_xi(Complex64::new(1.0, 2.0 * t))?;
    Ok(Complex64::from_polar(1.0, -2.0 * l.im))
}

/// Truncation length n_max(y) = ⌈(T + 12T^{1/3} + 20)/(2πy)⌉.
pub fn truncation_length(t: f64, y: f64) -> usize {
    ((t + 12.0 * t.cbrt() + 20.0) / (TAU * y)).ceil() as usize
}

/// Smallest admissible truncation: 2π·n_max·y must exceed T + 12T^{1/3}.
pub fn minimum_truncation(t: f64, y: f64) -> usize {
    ((t + 12.0 * t.cbrt()) / (TAU * y)).floor() as usize + 1
}

type RowKey = (u64, usize);

pub struct EisensteinEvaluator {
    t: f64,
    phi: Complex64,
    /// θ = arg ξ(1+2iT)
    theta: f64,
    /// ln(e^{πT/2}|ξ(1+2iT)|)
    log_rho_scaled: f64,
    rows: RwLock<HashMap<RowKey, Arc<[f64]>>>,
}

impl std::fmt::Debug for EisensteinEvaluator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("EisensteinEvaluator")
            .field("t", &self.t)
            .field("phi", &self.phi)
            .field("theta", &self.theta)
            .field("log_rho_scaled", &self.log_rho_scaled)
            .finish_non_exhaustive()
    }
}

impl EisensteinEvaluator {
    /// Evaluator for E(z, ½+iT). Negative T is allowed and gives
    /// E(z, ½-iT) = conj E(z, ½+iT).
    pub fn new(t: f64) -> Result<Self> {
        if t == 0.0 || !t.is_finite() {
            return Err(Error::pole("EisensteinEvaluator", format!("T = {t}")));
        }
        let l = log_xi(Complex64::new(1.0, 2.0 * t))?;
        let theta = l.im;
        let ev = EisensteinEvaluator {
            t,
            phi: Complex64::from_polar(1.0, -2.0 * theta),
            theta,
            log_rho_scaled: l.re + FRAC_PI_2 * t.abs(),
            rows: RwLock::new(HashMap::new()),
        };
        Ok(ev)
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn phi(&self) -> Complex64 {
        self.phi
    }

    /// Overall phase: E = e^{-iθ}·F.
    pub fn phase(&self) -> Complex64 {
        Complex64::from_polar(1.0, -self.theta)
    }

    /// ln(e^{π|T|/2}|ξ(1+2iT)|) and arg ξ(1+2iT).
    pub fn xi_scaled(&self) -> (f64, f64) {
        (self.log_rho_scaled, self.theta)
    }

    /// Constant term y^{½+iT} + φ y^{½-iT}.
    pub fn constant_term(&self, y: f64) -> Complex64 {
        self.phase() * self.constant_term_real(y)
    }

    /// Constant term of F: 2√y cos(θ + T log y).
    pub fn constant_term_real(&self, y: f64) -> f64 {
        2.0 * y.sqrt() * (self.theta + self.t * y.ln()).cos()
    }

    fn compute_row(&self, y: f64, n_max: usize) -> Result<Vec<f64>> {
        let t = self.t.abs();
        let pref = 4.0 * y.sqrt() * (-self.log_rho_scaled).exp();
        let mut row = Vec::with_capacity(n_max);
        for n in 1..=n_max {
            let k = bessel_k_imag_scaled(t, TAU * n as f64 * y)?.value;
            row.push(pref * tau_shifted_real(n as u64, 0.5 * t) * k);
        }
        Ok(row)
    }

    /// Coefficients b_1(y), ..., b_{n_max}(y) of F. Rows are cached.
    pub fn fourier_row(&self, y: f64, n_max: usize) -> Result<Arc<[f64]>> {
        if !(y >= Y_FLOOR) {
            return Err(Error::domain("fourier_row", format!("y = {y} below floor {Y_FLOOR}")));
        }
        let need = minimum_truncation(self.t.abs(), y);
        if n_max < need {
            return Err(Error::Truncation { n_max, required: need, y });
        }
        let key = (y.to_bits(), n_max);
        if let Some(row) = self.rows.read().expect("row cache poisoned").get(&key) {
            return Ok(row.clone());
        }
        let row: Arc<[f64]> = self.compute_row(y, n_max)?.into();
        let mut guard = self.rows.write().expect("row cache poisoned");
        Ok(guard.entry(key).or_insert(row).clone())
    }

    /// Row at the default truncation length.
    pub fn default_row(&self, y: f64) -> Result<Arc<[f64]>> {
        self.fourier_row(y, truncation_length(self.t.abs(), y))
    }

    /// Number of cached rows.
    pub fn cached_rows(&self) -> usize {
        self.rows.read().expect("row cache poisoned").len()
    }

    /// F(x + iy) given a row for height y.
    pub fn eval_real_with_row(&self, row: &[f64], x: f64, y: f64) -> f64 {
        self.constant_term_real(y) + cosine_series(row, TAU * x)
    }

    /// Real form F(z) = e^{iθ}E(z); |F| = |E|.
    pub fn eval_real(&self, z: Point) -> Result<f64> {
        let row = self.default_row(z.y)?;
        Ok(self.eval_real_with_row(&row, reduce_x(z.x), z.y))
    }

    pub fn eval_e(&self, z: Point) -> Result<Complex64> {
        Ok(self.phase() * self.eval_real(z)?)
    }

    /// E(z) with an explicit truncation length (not cached).
    pub fn eval_e_truncated(&self, z: Point, n_max: usize) -> Result<Complex64> {
        if !(z.y >= Y_FLOOR) {
            return Err(Error::domain("eval_E", format!("y = {} below floor {Y_FLOOR}", z.y)));
        }
        let need = minimum_truncation(self.t.abs(), z.y);
        if n_max < need {
            return Err(Error::Truncation { n_max, required: need, y: z.y });
        }
        let row = self.compute_row(z.y, n_max)?;
        Ok(self.phase() * self.eval_real_with_row(&row, reduce_x(z.x), z.y))
    }
}

/// E(z, ½+iT) at a single point (builds a throwaway evaluator).
pub fn eval_e(t: f64, z: Point) -> Result<Complex64> {
    let ev = EisensteinEvaluator::new(t)?;
    if !(z.y >= Y_FLOOR) {
        return Err(Error::domain("eval_E", format!("y = {} below floor {Y_FLOOR}", z.y)));
    }
    ev.eval_e(z)
}

/// x reduced to [-½, ½).
pub fn reduce_x(x: f64) -> f64 {
    x - (x + 0.5).floor()
}

/// Σ_{n≥1} row[n-1]·cos(nφ) by Clenshaw's recurrence.
pub fn cosine_series(row: &[f64], phi: f64) -> f64 {
    let c = phi.cos();
    let mut b1 = 0.0;
    let mut b2 = 0.0;
    for &a in row.iter().rev() {
        let b0 = a + 2.0 * c * b1 - b2;
        b2 = b1;
        b1 = b0;
    }
    // Σ_{n=1}^N a_n cos(nφ) = b_1 cos φ - b_2 with the recurrence above.
    b1 * c - b2
}
