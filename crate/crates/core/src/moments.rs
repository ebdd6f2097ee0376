//! Truncated and regularized moments of |E(z, ½+iT)| over the fundamental
//! domain.
//!
//! The domain splits at y = 1. Above it, the box [-½, ½] × [1, Y] is
//! integrated by GK21 panels in u = log y and the periodic trapezoid in x,
//! which is exact for the trigonometric polynomial |F|^{2k}. Below it, the
//! arc region x² + y² ≥ 1, y ≤ 1 is parametrized by w = √(1 - y²) ∈ [0, ½],
//! so the arc becomes the straight edge x = w and both rules stay Gaussian.

use serde::Serialize;
use std::f64::consts::{PI, TAU};

use crate::eisenstein::{cosine_series, truncation_length, EisensteinEvaluator};
use crate::error::{Error, Result};
use crate::par::{self, ordered_sum, Parallelism};
use crate::quad::{gauss_legendre, gk21_nodes};
use crate::specfun::xi_log_derivative_re;
use crate::Complex64;

/// Highest T the default grids are tuned for.
pub const T_CEILING: f64 = 64.0;

/// Smallest cut height at which the non-constant Fourier modes are
/// negligible above Y: 2πY clears the turning point by 12T^{1/3} + 20.
/// Below this, I(Y) - A(Y) still depends on Y.
pub fn settled_cut(t: f64) -> f64 {
    let t = t.abs();
    ((t + 12.0 * t.cbrt() + 20.0) / TAU).max(8.0)
}

/// Grid resolution knobs. [`GridResolution::refined`] doubles every one.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, serde::Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GridResolution {
    /// GK21 panels per unit of log y, per unit of T.
    pub panels_per_t: f64,
    /// GK21 panels along w ∈ [0, ½], per unit of T.
    pub arc_panels_per_t: f64,
    /// Lower bound on panel counts in either region.
    pub min_panels: usize,
    /// Multiplier on the exactness count 4·n_max + 16 for the x rule.
    pub x_oversample: f64,
    /// 16-point Gauss panels per 8 radians of the top harmonic on the arc rows.
    pub arc_x_rate: f64,
}

impl Default for GridResolution {
    fn default() -> Self {
        GridResolution { panels_per_t: 0.75, arc_panels_per_t: 0.5, min_panels: 4, x_oversample: 1.0, arc_x_rate: 1.0 }
    }
}

impl GridResolution {
    pub fn refined(self) -> Self {
        GridResolution {
            panels_per_t: 2.0 * self.panels_per_t,
            arc_panels_per_t: 2.0 * self.arc_panels_per_t,
            min_panels: 2 * self.min_panels,
            x_oversample: 2.0 * self.x_oversample,
            arc_x_rate: 2.0 * self.arc_x_rate,
        }
    }
}

/// A height y with its GK21 weights (Kronrod and embedded Gauss, zero for
/// Kronrod-only nodes) already multiplied by the measure.
#[derive(Clone, Debug)]
pub struct YNode {
    pub y: f64,
    pub panel: usize,
    pub weight_k: f64,
    pub weight_g: f64,
    pub n_max: usize,
    pub x_rule: XRule,
}

#[derive(Clone, Debug)]
pub enum XRule {
    /// Periodic trapezoid with `count` equispaced points on [-½, ½).
    Periodic { count: usize },
    /// Gauss nodes and weights on [w, ½]; the mirror half [-½, -w] is added by evenness.
    Arc { nodes: Vec<f64>, weights: Vec<f64> },
}

#[derive(Clone, Debug)]
pub struct QuadratureGrid {
    pub t: f64,
    pub y_cut: f64,
    pub nodes: Vec<YNode>,
    pub panels: usize,
}

impl QuadratureGrid {
    pub fn new(t: f64, y_cut: f64, res: &GridResolution) -> Result<Self> {
        if !(y_cut > 1.0) || !y_cut.is_finite() {
            return Err(Error::domain("QuadratureGrid", format!("Y = {y_cut} must exceed 1")));
        }
        let t = t.abs();
        let mut nodes = Vec::new();
        let mut panel = 0;

        let u_end = y_cut.ln();
        let n_u = ((res.panels_per_t * t * u_end).ceil() as usize).max(res.min_panels);
        let h = u_end / n_u as f64;
        for p in 0..n_u {
            for (u, wk, wg) in gk21_nodes(p as f64 * h, (p + 1) as f64 * h) {
                let y = u.exp();
                // dy/y² = e^{-u} du
                let m = (-u).exp();
                let n_max = truncation_length(t, y);
                let need = 4 * n_max + 16;
                let count = ((res.x_oversample * need as f64).ceil() as usize + 1) & !1;
                nodes.push(YNode { y, panel, weight_k: wk * m, weight_g: wg * m, n_max, x_rule: XRule::Periodic { count } });
            }
            panel += 1;
        }

        let gl = gauss_legendre(16);
        let n_w = ((res.arc_panels_per_t * t).ceil() as usize).max(res.min_panels);
        let hw = 0.5 / n_w as f64;
        for p in 0..n_w {
            for (w, wk, wg) in gk21_nodes(p as f64 * hw, (p + 1) as f64 * hw) {
                let one_minus = 1.0 - w * w;
                let y = one_minus.sqrt();
                // dy/y² = w (1 - w²)^{-3/2} dw
                let m = w / (one_minus * y);
                let n_max = truncation_length(t, y);
                let len = 0.5 - w;
                let top = TAU * 4.0 * n_max as f64;
                let panels = ((res.arc_x_rate * len * top / 8.0).ceil() as usize).max(1);
                let (mut xs, mut ws) = (Vec::with_capacity(16 * panels), Vec::with_capacity(16 * panels));
                let hx = len / panels as f64;
                for q in 0..panels {
                    let a = w + q as f64 * hx;
                    for (xi, wi) in gl.0.iter().zip(&gl.1) {
                        xs.push(a + 0.5 * hx * (xi + 1.0));
                        ws.push(0.5 * hx * wi);
                    }
                }
                nodes.push(YNode {
                    y,
                    panel,
                    weight_k: wk * m,
                    weight_g: wg * m,
                    n_max,
                    x_rule: XRule::Arc { nodes: xs, weights: ws },
                });
            }
            panel += 1;
        }
        Ok(QuadratureGrid { t, y_cut, nodes, panels: panel })
    }

    /// Grid at the default resolution.
    pub fn default_for(t: f64, y_cut: f64) -> Result<Self> {
        Self::new(t, y_cut, &GridResolution::default())
    }
}

/// I₂ and I₄ on one grid, with GK21-versus-G10 error estimates.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TruncatedMoments {
    pub i2: f64,
    pub i4: f64,
    pub err2: f64,
    pub err4: f64,
}

impl TruncatedMoments {
    pub fn get(&self, k: u32) -> (f64, f64) {
        if k == 1 {
            (self.i2, self.err2)
        } else {
            (self.i4, self.err4)
        }
    }
}

fn row_averages(ev: &EisensteinEvaluator, node: &YNode) -> Result<(f64, f64)> {
    let row = ev.fourier_row(node.y, node.n_max)?;
    let y = node.y;
    match &node.x_rule {
        XRule::Periodic { count } => {
            let need = 4 * node.n_max + 16;
            if *count < need || count % 2 == 1 {
                return Err(Error::Resolution { y, have: *count, need });
            }
            // F is even in x: fold j and count - j.
            let half = count / 2;
            let (mut s2, mut s4) = (Vec::with_capacity(half + 1), Vec::with_capacity(half + 1));
            for j in 0..=half {
                let f = ev.eval_real_with_row(&row, j as f64 / *count as f64, y);
                let w = if j == 0 || j == half { 1.0 } else { 2.0 };
                let f2 = f * f;
                s2.push(w * f2);
                s4.push(w * f2 * f2);
            }
            let c = *count as f64;
            Ok((ordered_sum(s2) / c, ordered_sum(s4) / c))
        }
        XRule::Arc { nodes, weights } => {
            let (mut s2, mut s4) = (Vec::with_capacity(nodes.len()), Vec::with_capacity(nodes.len()));
            for (&x, &w) in nodes.iter().zip(weights) {
                let f = ev.constant_term_real(y) + cosine_series(&row, TAU * x);
                let f2 = f * f;
                s2.push(w * f2);
                s4.push(w * f2 * f2);
            }
            Ok((2.0 * ordered_sum(s2), 2.0 * ordered_sum(s4)))
        }
    }
}

/// ∫ |E|² and ∫ |E|⁴ over the fundamental domain cut at height Y.
pub fn truncated_moments(ev: &EisensteinEvaluator, grid: &QuadratureGrid, par: Parallelism) -> Result<TruncatedMoments> {
    if (ev.t().abs() - grid.t).abs() > 1e-12 * grid.t {
        return Err(Error::domain("truncated_moment", format!("grid built for T = {}, evaluator has T = {}", grid.t, ev.t())));
    }
    let rows = par::map(par, &grid.nodes, |node| row_averages(ev, node));
    let mut k2 = vec![0.0; grid.panels];
    let mut g2 = vec![0.0; grid.panels];
    let mut k4 = vec![0.0; grid.panels];
    let mut g4 = vec![0.0; grid.panels];
    for (node, r) in grid.nodes.iter().zip(rows) {
        let (a2, a4) = r?;
        k2[node.panel] += node.weight_k * a2;
        g2[node.panel] += node.weight_g * a2;
        k4[node.panel] += node.weight_k * a4;
        g4[node.panel] += node.weight_g * a4;
    }
    let err = |k: &[f64], g: &[f64]| k.iter().zip(g).map(|(a, b)| (a - b).abs()).sum::<f64>();
    Ok(TruncatedMoments { i2: ordered_sum(k2.iter().copied()), i4: ordered_sum(k4.iter().copied()), err2: err(&k2, &g2), err4: err(&k4, &g4) })
}

/// ∫_{F, y ≤ Y} |E(z, ½+iT)|^{2k} dμ for k ∈ {1, 2}.
pub fn truncated_moment(t: f64, grid: &QuadratureGrid, k: u32, par: Parallelism) -> Result<f64> {
    check_k(k)?;
    let ev = EisensteinEvaluator::new(t)?;
    Ok(truncated_moments(&ev, grid, par)?.get(k).0)
}

fn check_k(k: u32) -> Result<()> {
    if k == 1 || k == 2 {
        Ok(())
    } else {
        Err(Error::domain("moments", format!("k = {k} not in {{1, 2}}")))
    }
}

/// Y^{a - ibT}
fn cpow(y: f64, a: f64, b: f64) -> Complex64 {
    (Complex64::new(a, b) * y.ln()).exp()
}

/// Antiderivative (zero constant) of the x-averaged growing part
/// |y^{½+iT} + φ y^{½-iT}|^{2k}/y².
pub fn regularization_correction_with_phi(t: f64, phi: Complex64, y_cut: f64, k: u32) -> Result<f64> {
    check_k(k)?;
    if !(y_cut > 1.0) {
        return Err(Error::domain("regularization_correction", format!("Y = {y_cut} must exceed 1")));
    }
    let i = Complex64::i();
    Ok(match k {
        1 => 2.0 * y_cut.ln() + (phi * cpow(y_cut, 0.0, -2.0 * t) / (-i * t)).re,
        _ => {
            let a = phi * cpow(y_cut, 1.0, -2.0 * t) / Complex64::new(1.0, -2.0 * t);
            let b = phi * phi * cpow(y_cut, 1.0, -4.0 * t) / Complex64::new(1.0, -4.0 * t);
            6.0 * y_cut + 8.0 * a.re + 2.0 * b.re
        }
    })
}

pub fn regularization_correction(t: f64, y_cut: f64, k: u32) -> Result<f64> {
    let ev = EisensteinEvaluator::new(t)?;
    regularization_correction_with_phi(t, ev.phi(), y_cut, k)
}

/// Leading law for the regularized moment: (72/π) log² T for k = 2, and the
/// exact Maass–Selberg value 4 Re ξ'/ξ(1+2iT) for k = 1.
pub fn leading_law(t: f64, k: u32) -> Result<f64> {
    check_k(k)?;
    let t = t.abs();
    if k == 2 {
        let l = t.ln();
        Ok(72.0 / PI * l * l)
    } else {
        Ok(4.0 * xi_log_derivative_re(Complex64::new(1.0, 2.0 * t))?)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MomentResult {
    #[serde(rename = "T")]
    pub t: f64,
    #[serde(rename = "Y")]
    pub y_cut: f64,
    pub k: u32,
    pub raw: f64,
    pub correction: f64,
    pub regularized: f64,
    pub ratio: f64,
    pub error_estimate: f64,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct MomentConfig {
    pub resolution: GridResolution,
    pub parallelism: Parallelism,
}

/// Both moments from a single pass over the grid.
pub fn regularized_moments(t: f64, y_cut: f64, cfg: &MomentConfig) -> Result<[MomentResult; 2]> {
    if !(t.abs() <= T_CEILING) {
        return Err(Error::domain("regularized_moment", format!("|T| = {t} above ceiling {T_CEILING}")));
    }
    let ev = EisensteinEvaluator::new(t)?;
    let grid = QuadratureGrid::new(t, y_cut, &cfg.resolution)?;
    let m = truncated_moments(&ev, &grid, cfg.parallelism)?;
    let build = |k: u32| -> Result<MomentResult> {
        let (raw, err) = m.get(k);
        let correction = regularization_correction_with_phi(t.abs(), ev.phi(), y_cut, k)?;
        let regularized = raw - correction;
        if !regularized.is_finite() {
            return Err(Error::Invariant(format!("non-finite regularized moment at T = {t}, Y = {y_cut}")));
        }
        Ok(MomentResult { t, y_cut, k, raw, correction, regularized, ratio: regularized / leading_law(t, k)?, error_estimate: err })
    };
    Ok([build(1)?, build(2)?])
}

pub fn regularized_moment(t: f64, y_cut: f64, k: u32, cfg: &MomentConfig) -> Result<MomentResult> {
    check_k(k)?;
    Ok(regularized_moments(t, y_cut, cfg)?[k as usize - 1])
}

/// One scan entry: the input T and either a result or the error message.
#[derive(Clone, Debug, PartialEq)]
pub struct ScanRow {
    pub t: f64,
    pub result: std::result::Result<MomentResult, String>,
}

/// Independent moments for each T, returned in input order.
pub fn rwc_scan(t_list: &[f64], y_cut: f64, k: u32, cfg: &MomentConfig) -> Result<Vec<ScanRow>> {
    if t_list.is_empty() {
        return Err(Error::domain("rwc_scan", "empty T list"));
    }
    check_k(k)?;
    Ok(par::map(cfg.parallelism, t_list, |&t| ScanRow {
        t,
        result: regularized_moment(t, y_cut, k, cfg).map_err(|e| e.to_string()),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn correction_derivative_k2() {
        let (t, y) = (8.0, 10.0);
        let phi = crate::eisenstein::scattering_phi(t).unwrap();
        let a = |y: f64| regularization_correction_with_phi(t, phi, y, 2).unwrap();
        let h = 1e-3;
        let d = (-a(y + 2.0 * h) + 8.0 * a(y + h) - 8.0 * a(y - h) + a(y - 2.0 * h)) / (12.0 * h);
        let want = 6.0 + 8.0 * (phi * cpow(y, 0.0, -2.0 * t)).re + 2.0 * (phi * phi * cpow(y, 0.0, -4.0 * t)).re;
        assert!((d - want).abs() < 1e-8, "{d} vs {want}");
    }

    #[test]
    fn correction_derivative_k1() {
        let (t, y) = (11.0, 3.0);
        let phi = crate::eisenstein::scattering_phi(t).unwrap();
        let h = 1e-5;
        let d = (regularization_correction_with_phi(t, phi, y + h, 1).unwrap()
            - regularization_correction_with_phi(t, phi, y - h, 1).unwrap())
            / (2.0 * h);
        // |c|²/y² = (2 + 2 Re(φ y^{-2iT}))/y
        let want = (2.0 + 2.0 * (phi * cpow(y, 0.0, -2.0 * t)).re) / y;
        assert!((d - want).abs() < 1e-8, "{d} vs {want}");
    }

    #[test]
    fn binomial_coefficients() {
        // |1 + w|⁴ averaged with w = e^{iα}: 6 + 8 cos α + 2 cos 2α.
        let n = 64;
        for j in 0..n {
            let a = TAU * j as f64 / n as f64;
            let w = Complex64::from_polar(1.0, a);
            let lhs = (Complex64::new(1.0, 0.0) + w).norm_sqr().powi(2);
            assert!((lhs - (6.0 + 8.0 * a.cos() + 2.0 * (2.0 * a).cos())).abs() < 1e-12);
        }
    }

    #[test]
    fn grid_invariants() {
        let g = QuadratureGrid::default_for(10.0, 10.0).unwrap();
        for n in &g.nodes {
            assert!(n.weight_k > 0.0 && n.weight_g >= 0.0);
            if let XRule::Periodic { count } = n.x_rule {
                assert!(count >= 4 * n.n_max + 16 && count % 2 == 0);
            }
        }
        assert!(QuadratureGrid::default_for(10.0, 1.0).is_err());
    }

    #[test]
    fn grid_area() {
        // Σ weights · (x length) = μ(F ∩ {y ≤ Y}) = π/3 - 1/Y.
        let y = 7.0;
        let g = QuadratureGrid::default_for(10.0, y).unwrap();
        let area: f64 = g
            .nodes
            .iter()
            .map(|n| match &n.x_rule {
                XRule::Periodic { .. } => n.weight_k,
                XRule::Arc { weights, .. } => 2.0 * n.weight_k * weights.iter().sum::<f64>(),
            })
            .sum();
        assert!((area - (PI / 3.0 - 1.0 / y)).abs() < 1e-13, "{area}");
    }

    #[test]
    fn under_resolved_grid_is_rejected() {
        let res = GridResolution { x_oversample: 0.5, ..Default::default() };
        let g = QuadratureGrid::new(10.0, 4.0, &res).unwrap();
        let ev = EisensteinEvaluator::new(10.0).unwrap();
        assert!(matches!(truncated_moments(&ev, &g, Parallelism::Sequential), Err(Error::Resolution { .. })));
    }

    #[test]
    fn rejects_bad_k() {
        assert!(regularization_correction(10.0, 5.0, 3).is_err());
    }
}
