use std::f64::consts::PI;

use super::weights::smooth_step;
use crate::arith::{mobius, tau_shifted_real};
use crate::error::{Error, Result};
use crate::par::{self, Parallelism};
use crate::quad::ContourSpec;
use crate::specfun::{log_gamma_complex, zeta_complex};
use crate::Complex64;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// F(s₁, s₂) = ζ(1+s₁+s₂+2iT) ζ(1+s₁+s₂-2iT) ζ(1-s₁+s₂+2iT) ζ(1-s₁+s₂-2iT)
///             / ζ(2+2s₂).
pub fn dirichlet_f(s1: Complex64, s2: Complex64, t: f64) -> Result<Complex64> {
    let it = c(0.0, 2.0 * t);
    let one = c(1.0, 0.0);
    let args = [one + s1 + s2 + it, one + s1 + s2 - it, one - s1 + s2 + it, one - s1 + s2 - it];
    let mut num = one;
    for a in args {
        if (a - 1.0).norm() < 1e-3 {
            return Err(Error::pole("dirichlet_F", a));
        }
        num *= zeta_complex(a)?;
    }
    Ok(num / zeta_complex(s2 * 2.0 + 2.0)?)
}

/// Brute-force value of F from its arithmetic definition
///   F = Σ_k k^{-1-2s₁} Σ_{c,m} r_c(m) τ(m,2T) c^{-1-2s₁} m^{-1+s₁-s₂}.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct BruteForceF {
    pub value: Complex64,
    /// The sharply truncated triple sum, for reference.
    pub sharp: Complex64,
    /// RMS residual of the tail fit relative to |value|.
    pub fit_residual: f64,
    pub bound: usize,
}

/// Brute-force F(s₁, s₂) with c, m ≤ `bound`. The k-sum carries an
/// Euler–Maclaurin tail. The m-sum is weighted by ρ(m/X) (1 on [0, 1],
/// 0 past 2) for a range of X, and the smoothed sums are fitted by
///   S(X) = F' + Σ_p A_p X^{p - b},   b = 1 - s₁ + s₂,
/// over the four poles p = 1 ± 2iT and 1 - 2s₁ ± 2iT of the m-series.
/// Requires Re s₁ > 0 and Re(s₂ - s₁) > 0.
pub fn dirichlet_f_brute(s1: Complex64, s2: Complex64, t: f64, bound: usize, par: Parallelism) -> Result<BruteForceF> {
    if !(s1.re > 0.05 && (s2 - s1).re > 0.05 && bound >= 256 && t.abs() >= 0.5) {
        return Err(Error::domain("dirichlet_F_brute", format!("s1 = {s1}, s2 = {s2}, T = {t}, bound = {bound}")));
    }
    let a = s1 * 2.0 + 1.0;
    let b = c(1.0, 0.0) - s1 + s2;
    let kf = bound as f64;

    let pow = |n: usize, e: Complex64| (-e * (n as f64).ln()).exp();
    let mut k_sum = c(0.0, 0.0);
    for k in 1..bound {
        k_sum += pow(k, a);
    }
    let kb = pow(bound, a);
    let k_tail = kb * kf / (a - 1.0) + kb * 0.5 + a * kb / (12.0 * kf) - a * (a + 1.0) * (a + 2.0) * kb / (720.0 * kf.powi(3));
    let k_total = k_sum + k_tail;

    // r_c(m) = Σ_{d | (c, m)} μ(c/d) d, accumulated over d | m.
    let mu: Vec<i64> = (0..=bound).map(|n| if n == 0 { 0 } else { mobius(n as u64) }).collect();
    let c_pow: Vec<Complex64> = (0..=bound).map(|n| if n == 0 { c(0.0, 0.0) } else { pow(n, a) }).collect();
    let g = par::map_range(par, bound, |i| {
        let m = i + 1;
        let mut r = c(0.0, 0.0);
        for d in 1..=m {
            if m % d != 0 {
                continue;
            }
            let mut cc = d;
            let mut q = 1;
            while cc <= bound {
                if mu[q] != 0 {
                    r += c_pow[cc] * (mu[q] * d as i64) as f64;
                }
                cc += d;
                q += 1;
            }
        }
        r * tau_shifted_real(m as u64, t) * pow(m, b)
    });

    let sharp = g.iter().sum::<Complex64>() * k_total;

    let exps: Vec<Complex64> = [c(1.0, 2.0 * t), c(1.0, -2.0 * t), c(1.0, 2.0 * t) - s1 * 2.0, c(1.0, -2.0 * t) - s1 * 2.0]
        .iter()
        .map(|p| p - b)
        .collect();
    let n_fit = 40;
    let (x_lo, x_hi) = (kf / 10.0, kf / 2.0);
    let mut rows = Vec::with_capacity(n_fit);
    let mut rhs = Vec::with_capacity(n_fit);
    for j in 0..n_fit {
        let x = x_lo * (x_hi / x_lo).powf(j as f64 / (n_fit - 1) as f64);
        let top = (2.0 * x).floor() as usize;
        let mut s = c(0.0, 0.0);
        for m in 1..=top.min(bound) {
            s += g[m - 1] * (1.0 - smooth_step(m as f64 / x - 1.0));
        }
        let mut row = vec![c(1.0, 0.0)];
        row.extend(exps.iter().map(|e| (e * x.ln()).exp()));
        rows.push(row);
        rhs.push(s);
    }
    let (coef, resid) = least_squares(&rows, &rhs)?;
    let value = coef[0] * k_total;
    Ok(BruteForceF { value, sharp, fit_residual: resid / coef[0].norm(), bound })
}

/// Complex least squares by modified Gram–Schmidt. Returns the coefficients
/// and the RMS residual.
fn least_squares(rows: &[Vec<Complex64>], rhs: &[Complex64]) -> Result<(Vec<Complex64>, f64)> {
    let m = rows.len();
    let n = rows[0].len();
    let mut q: Vec<Vec<Complex64>> = (0..n).map(|j| rows.iter().map(|r| r[j]).collect()).collect();
    let mut r = vec![vec![c(0.0, 0.0); n]; n];
    for j in 0..n {
        for k in 0..j {
            let dot: Complex64 = (0..m).map(|i| q[k][i].conj() * q[j][i]).sum();
            r[k][j] = dot;
            for i in 0..m {
                let v = q[k][i] * dot;
                q[j][i] -= v;
            }
        }
        let norm = q[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-13 {
            return Err(Error::Invariant("tail fit is rank deficient".into()));
        }
        r[j][j] = c(norm, 0.0);
        for z in q[j].iter_mut() {
            *z /= norm;
        }
    }
    let qtb: Vec<Complex64> = (0..n).map(|k| (0..m).map(|i| q[k][i].conj() * rhs[i]).sum()).collect();
    let mut x = vec![c(0.0, 0.0); n];
    for j in (0..n).rev() {
        let mut v = qtb[j];
        for k in j + 1..n {
            v -= r[j][k] * x[k];
        }
        x[j] = v / r[j][j];
    }
    let ss: f64 = rows
        .iter()
        .zip(rhs)
        .map(|(row, y)| (row.iter().zip(&x).map(|(a, b)| a * b).sum::<Complex64>() - y).norm_sqr())
        .sum();
    Ok((x, (ss / m as f64).sqrt()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AsymptoticMode {
    /// 3/(2π³) |ζ(1+2iT)|⁴ log²T.
    Full,
    /// The same with |ζ(1+2iT)| set to 1.
    Unit,
}

pub fn mainterm_asymptotic(t: f64, mode: AsymptoticMode) -> Result<f64> {
    if !(t > 1.0) || !t.is_finite() {
        return Err(Error::domain("mainterm_asymptotic", format!("T = {t}")));
    }
    let z = match mode {
        AsymptoticMode::Full => zeta_complex(c(1.0, 2.0 * t))?.norm().powi(4),
        AsymptoticMode::Unit => 1.0,
    };
    Ok(3.0 / (2.0 * PI.powi(3)) * z * t.ln().powi(2))
}

/// Lines for the double integral defining M₁ and M₂.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResidueContours {
    pub s1: ContourSpec,
    pub s2: ContourSpec,
}

impl Default for ResidueContours {
    fn default() -> Self {
        ResidueContours { s1: ContourSpec::new(0.3, 10.0, 1.0 / 64.0), s2: ContourSpec::new(0.8, 10.0, 1.0 / 64.0) }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct ResidueTerms {
    pub m1: f64,
    pub m2: f64,
    /// Imaginary parts left by the quadrature (zero in exact arithmetic).
    pub m1_imag: f64,
    pub m2_imag: f64,
    /// Largest |integrand| on the truncation circle.
    pub tail: f64,
}

/// M₁ = (log T/π²) (1/2πi)² ∫∫ e^{s₁²+s₂²} π^{-2s₂} T^{2s₂} F(s₁,s₂) ζ(1+2s₂) B(s₂) ds₁/s₁ ds₂/s₂
/// and M₂ = (1/2π²) × the same integral with ∂F/∂s₂ in place of F,
/// B(s) = √π Γ(s+½) / (2Γ(s+1)). Both lines share one step so every ζ
/// value depends on a lattice index only; nodes outside the disc
/// τ₁² + τ₂² ≤ H² (H the smaller half-height) are skipped.
pub fn mainterm_residue_numeric(t: f64, contours: &ResidueContours, par: Parallelism) -> Result<ResidueTerms> {
    let ResidueContours { s1: c1, s2: c2 } = *contours;
    c1.validate_avoiding(&[0.0])?;
    c2.validate_avoiding(&[0.0, -0.5])?;
    if !(t >= 2.0 && t.is_finite()) {
        return Err(Error::domain("mainterm_residue_numeric", format!("T = {t}")));
    }
    if c1.step != c2.step {
        return Err(Error::domain("mainterm_residue_numeric", "the two lines need equal steps"));
    }
    if !(c1.abscissa > 0.0 && c2.abscissa > c1.abscissa) {
        return Err(Error::domain(
            "mainterm_residue_numeric",
            format!("need 0 < Re s₁ < Re s₂, got {} and {}", c1.abscissa, c2.abscissa),
        ));
    }
    let h = c1.step;
    let n1 = c1.node_count();
    let n2 = c2.node_count();
    let (j1, j2) = ((n1 / 2) as i64, (n2 / 2) as i64);
    let radius = c1.half_height.min(c2.half_height);
    let delta = 1e-4;
    let shifts = [0.0, delta, -delta];
    let it = 2.0 * t;

    // u = s₁+s₂ has Im = (j+k-j1-j2)h; v = s₂-s₁ has Im = (k-j+j1-j2)h.
    let nu = n1 + n2 - 1;
    let table = |re: f64, offset: i64| -> Result<Vec<[Complex64; 6]>> {
        let rows = par::map_range(par, nu, |p| {
            let im = (p as i64 - offset) as f64 * h;
            let mut row = [c(0.0, 0.0); 6];
            for (q, d) in shifts.iter().enumerate() {
                row[2 * q] = zeta_complex(c(1.0 + re + d, im + it))?;
                row[2 * q + 1] = zeta_complex(c(1.0 + re + d, im - it))?;
            }
            Ok(row)
        });
        rows.into_iter().collect()
    };
    let zu = table(c1.abscissa + c2.abscissa, j1 + j2)?;
    let zv = table(c2.abscissa - c1.abscissa, j2 + (n1 as i64 - 1 - j1))?;

    let s1_nodes = c1.nodes();
    let s2_nodes = c2.nodes();
    let w1: Vec<Complex64> = s1_nodes.iter().map(|s| (s * s).exp() / s).collect();
    let lt = t.ln();
    let mut w2 = Vec::with_capacity(n2);
    let mut den = Vec::with_capacity(n2);
    for s in &s2_nodes {
        let b = (log_gamma_complex(s + 0.5)? - log_gamma_complex(s + 1.0)?).exp() * (PI.sqrt() / 2.0);
        let w = (s * s - s * 2.0 * PI.ln() + s * 2.0 * lt).exp() * zeta_complex(s * 2.0 + 1.0)? * b / s;
        w2.push(w);
        let mut d = [c(0.0, 0.0); 3];
        for (q, dd) in shifts.iter().enumerate() {
            d[q] = zeta_complex((s + dd) * 2.0 + 2.0)?;
        }
        den.push(d);
    }

    let rows = par::map_range(par, n2, |k| {
        let tau2 = (k as i64 - j2) as f64 * h;
        let mut f_acc = c(0.0, 0.0);
        let mut d_acc = c(0.0, 0.0);
        let mut edge = 0.0f64;
        for j in 0..n1 {
            let tau1 = (j as i64 - j1) as f64 * h;
            if tau1 * tau1 + tau2 * tau2 > radius * radius {
                continue;
            }
            let u = &zu[j + k];
            let v = &zv[k + n1 - 1 - j];
            let f = |q: usize| u[2 * q] * u[2 * q + 1] * v[2 * q] * v[2 * q + 1] / den[k][q];
            let f0 = f(0);
            let df = (f(1) - f(2)) / (2.0 * delta);
            let w = w1[j] * w2[k];
            f_acc += w * f0;
            d_acc += w * df;
            if tau1 * tau1 + tau2 * tau2 > (radius - 2.0 * h).powi(2) {
                edge = edge.max((w * f0).norm());
            }
        }
        (f_acc, d_acc, edge)
    });
    let scale = (h / (2.0 * PI)).powi(2);
    let mut f_sum = c(0.0, 0.0);
    let mut d_sum = c(0.0, 0.0);
    let mut tail = 0.0f64;
    for (f, d, e) in rows {
        f_sum += f;
        d_sum += d;
        tail = tail.max(e);
    }
    let limit = 1e-8 * f_sum.norm();
    if tail > limit {
        return Err(Error::Contour { tail, limit });
    }
    let m1 = f_sum * (scale * lt / (PI * PI));
    let m2 = d_sum * (scale / (2.0 * PI * PI));
    Ok(ResidueTerms { m1: m1.re, m2: m2.re, m1_imag: m1.im, m2_imag: m2.im, tail })
}

/// |ζ'/ζ(1+2iT)| from the symmetric quotient (ζ(s+iu) - ζ(s-iu)) / (2iu ζ(s)),
/// u = 10⁻⁴.
pub fn zeta_log_derivative_diag(t: f64) -> Result<f64> {
    if !(t >= 1.0 && t.is_finite()) {
        return Err(Error::domain("zeta_log_derivative_diag", format!("T = {t}")));
    }
    let s = c(1.0, 2.0 * t);
    let u = 1e-4;
    let d = (zeta_complex(s + c(0.0, u))? - zeta_complex(s - c(0.0, u))?) / c(0.0, 2.0 * u);
    Ok((d / zeta_complex(s)?).norm())
}
