use std::f64::consts::PI;

use super::kernels::{log_kernel_g, KernelKind, Sign};
use crate::arith::{divisor_count, e_frac, gcd, mod_inverse, tau_shifted_real};
use crate::error::{Error, Result};
use crate::par::{self, Parallelism};
use crate::quad::ContourSpec;
use crate::specfun::zeta_complex;
use crate::Complex64;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Largest number of terms either side of the identity may use.
pub const MAX_TERMS: usize = 1 << 21;

/// Φ(x) = exp(-(ln x - center)² / (2 width²)): smooth and rapidly decaying
/// in ln x, with Mellin transform in closed form.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct LogGaussian {
    pub center: f64,
    pub width: f64,
}

impl Default for LogGaussian {
    fn default() -> Self {
        LogGaussian { center: 1.5f64.ln(), width: 0.5 }
    }
}

impl LogGaussian {
    pub fn new(center: f64, width: f64) -> Result<Self> {
        if !(center.is_finite() && width > 0.05 && width < 5.0) {
            return Err(Error::domain("LogGaussian", format!("center {center}, width {width}")));
        }
        Ok(LogGaussian { center, width })
    }

    pub fn eval(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 0.0;
        }
        let u = (x.ln() - self.center) / self.width;
        (-0.5 * u * u).exp()
    }

    /// ∫₀^∞ Φ(x) x^{z-1} dx = w√(2π) exp(zμ + z²w²/2).
    pub fn mellin(&self, z: Complex64) -> Complex64 {
        let w = self.width;
        (z * self.center + z * z * (0.5 * w * w)).exp() * (w * (2.0 * PI).sqrt())
    }

    /// ∫₀^∞ Φ(x) ln x dx/x = μ·w√(2π).
    pub fn mellin_log_moment(&self) -> f64 {
        self.center * self.width * (2.0 * PI).sqrt()
    }

    /// Upper end of the region where Φ exceeds `floor`.
    pub fn upper_extent(&self, floor: f64) -> f64 {
        (self.center + self.width * (-2.0 * floor.ln()).sqrt()).exp()
    }
}

/// Which summation formula to check: τ(n) (kernels G₁±) or τ(m, 2T)
/// (kernels G₂±).
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct VoronoiCase {
    pub kind: KernelKind,
    pub h: i64,
    pub c: i64,
    /// N for the τ(n) sum, M for the τ(m, 2T) sum.
    pub scale: f64,
    /// The shift T; ignored for τ(n).
    pub t: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct VoronoiCheck {
    pub case: VoronoiCase,
    pub lhs: Complex64,
    pub rhs: Complex64,
    pub main: Complex64,
    pub dual: Complex64,
    /// |lhs - rhs| / |lhs|.
    pub gap: f64,
    pub lhs_terms: usize,
    pub dual_terms: usize,
}

/// Line for the transforms Φ̌±: Re s = ½, wide enough for the Gaussian
/// factor of Φ̃ to fall below e^{-40}.
fn dual_contour(phi: &LogGaussian) -> ContourSpec {
    let h = ((80.0f64).sqrt() / phi.width + 4.0).ceil();
    ContourSpec::new(0.5, h, 0.05)
}

/// Φ̌±(X) = (1/2πi) ∫ G±(s) Φ̃(-s) X^{-s} ds on a fixed line, with the
/// X-independent part tabulated once.
pub struct DualTransform {
    nodes: Vec<Complex64>,
    weights: [Vec<Complex64>; 2],
    scale: f64,
    mass: [f64; 2],
}

impl DualTransform {
    pub fn new(phi: &LogGaussian, kind: KernelKind, t: f64) -> Result<Self> {
        let contour = dual_contour(phi);
        let nodes = contour.nodes();
        let mut weights = [Vec::with_capacity(nodes.len()), Vec::with_capacity(nodes.len())];
        for (slot, sign) in [Sign::Plus, Sign::Minus].into_iter().enumerate() {
            for &s in &nodes {
                let g = log_kernel_g(s, sign, kind, t)?;
                let m = phi.mellin(-s);
                weights[slot].push((g + m.ln()).exp());
            }
        }
        let scale = contour.step / (2.0 * PI);
        let mass = [0, 1].map(|k| scale * weights[k].iter().map(|w| w.norm()).sum::<f64>());
        let ends = weights.iter().map(|w| w[0].norm().max(w[w.len() - 1].norm())).fold(0.0, f64::max);
        if ends > 1e-15 * mass[0].max(mass[1]) {
            return Err(Error::Contour { tail: ends, limit: 1e-15 * mass[0].max(mass[1]) });
        }
        Ok(DualTransform { nodes, weights, scale, mass })
    }

    /// (Φ̌₊(X), Φ̌₋(X)).
    pub fn eval(&self, x: f64) -> (Complex64, Complex64) {
        let lx = x.ln();
        let mut p = Complex64::new(0.0, 0.0);
        let mut m = Complex64::new(0.0, 0.0);
        for (j, s) in self.nodes.iter().enumerate() {
            let xs = (-s * lx).exp();
            p += self.weights[0][j] * xs;
            m += self.weights[1][j] * xs;
        }
        (p * self.scale, m * self.scale)
    }

    /// Rounding floor of [`DualTransform::eval`] at X.
    pub fn noise_floor(&self, x: f64) -> f64 {
        1e-15 * self.mass[0].max(self.mass[1]) * x.powf(-0.5)
    }
}

fn arithmetic_weight(kind: KernelKind, n: u64, t: f64) -> f64 {
    match kind {
        KernelKind::Tau => divisor_count(n) as f64,
        KernelKind::TauShifted => tau_shifted_real(n, t),
    }
}

/// Both sides of the Voronoi summation formula for the smooth weight `phi`.
///
/// τ(n):      Σ τ(n)/n e(n h̄/c) Φ(n/N)
///            = (1/c)∫(log(x/c²) + 2γ)Φ(x/N)dx/x + Σ± (1/c) Σ_r τ(r) e(±rh/c) Φ̌±(Nr/c²)
/// τ(m, 2T):  Σ τ(m,2T)/m e(mh/c) Φ(m/M)
///            = Σ± ζ(1±4Ti) c^{-1∓4Ti} M^{±2Ti} Φ̃(±2Ti)
///              + Σ± (1/c) Σ_b τ(b,2T) e(±b h̄/c) Φ̌±(Mb/c²)
pub fn voronoi_identity_check(case: VoronoiCase, phi: &LogGaussian, par: Parallelism) -> Result<VoronoiCheck> {
    let VoronoiCase { kind, h, c, scale, t } = case;
    if c < 1 || gcd(h, c) != 1 || !(scale >= 1.0) || !scale.is_finite() {
        return Err(Error::domain("voronoi_identity_check", format!("{case:?}")));
    }
    if kind == KernelKind::TauShifted && !(t >= 1.0) {
        return Err(Error::domain("voronoi_identity_check", format!("T = {t} below 1")));
    }
    let hbar = mod_inverse(h, c).ok_or_else(|| Error::domain("voronoi_identity_check", "h not invertible"))?;
    // Sharp sums twist by h̄ in the τ(n) case and by h in the τ(m, 2T) case.
    let (twist_sum, twist_dual) = match kind {
        KernelKind::Tau => (hbar, h),
        KernelKind::TauShifted => (h, hbar),
    };

    let n_hi = (scale * phi.upper_extent(1e-18)).ceil() as usize;
    if n_hi > MAX_TERMS {
        return Err(Error::Convergence(format!("{n_hi} terms needed on the summation side")));
    }
    let lhs_parts = par::map_range(par, n_hi, |i| {
        let n = (i + 1) as u64;
        let w = arithmetic_weight(kind, n, t) / n as f64 * phi.eval(n as f64 / scale);
        e_frac(n as i128 * twist_sum as i128, c) * w
    });
    let lhs = Complex64::new(
        par::ordered_sum(lhs_parts.iter().map(|z| z.re)),
        par::ordered_sum(lhs_parts.iter().map(|z| z.im)),
    );

    let cf = c as f64;
    let main = match kind {
        KernelKind::Tau => {
            let m0 = phi.mellin(Complex64::new(0.0, 0.0)).re;
            Complex64::new(((scale.ln() - 2.0 * cf.ln() + 2.0 * EULER_GAMMA) * m0 + phi.mellin_log_moment()) / cf, 0.0)
        }
        KernelKind::TauShifted => {
            let mut acc = Complex64::new(0.0, 0.0);
            for sgn in [1.0, -1.0] {
                let iu = Complex64::new(0.0, sgn * 2.0 * t);
                let z = zeta_complex(Complex64::new(1.0, 0.0) + iu * 2.0)?;
                let pw = (-(Complex64::new(1.0, 0.0) + iu * 2.0) * cf.ln() + iu * scale.ln()).exp();
                acc += z * pw * phi.mellin(iu);
            }
            acc
        }
    };

    let transform = DualTransform::new(phi, kind, t)?;
    let tol = 1e-14 * lhs.norm().max(1e-300);
    let block = 64usize;
    let mut dual = Complex64::new(0.0, 0.0);
    let mut quiet = 0usize;
    let mut r0 = 1usize;
    let mut dual_terms = 0usize;
    'outer: loop {
        if r0 > MAX_TERMS {
            return Err(Error::Convergence("dual sum did not settle".into()));
        }
        let terms = par::map_range(par, block, |i| {
            let r = (r0 + i) as u64;
            let x = scale * r as f64 / (cf * cf);
            let (p, m) = transform.eval(x);
            let a = arithmetic_weight(kind, r, t) / cf;
            let ep = e_frac(r as i128 * twist_dual as i128, c);
            let v = (ep * p + ep.conj() * m) * a;
            let small = v.norm() <= tol.max(100.0 * a.abs() * transform.noise_floor(x));
            (v, small)
        });
        for (v, small) in terms {
            dual += v;
            dual_terms += 1;
            quiet = if small { quiet + 1 } else { 0 };
            if quiet >= 16 {
                break 'outer;
            }
        }
        r0 += block;
    }

    let rhs = main + dual;
    Ok(VoronoiCheck {
        case,
        lhs,
        rhs,
        main,
        dual,
        gap: (lhs - rhs).norm() / lhs.norm(),
        lhs_terms: n_hi,
        dual_terms,
    })
}
