//! Quadrature building blocks: Gauss–Legendre, Gauss–Kronrod (10/21),
//! and the equispaced rule on a vertical line.

use num_complex::Complex64;

/// Gauss–Legendre nodes and weights on [-1, 1], nodes ascending.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1, "gauss_legendre needs at least one node");
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, z);
            dp = d;
            let dz = p / d;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, z);
        if d != 0.0 {
            dp = d;
        }
        let wi = 2.0 / ((1.0 - z * z) * dp * dp);
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    if n % 2 == 1 {
        x[n / 2] = 0.0;
    }
    (x, w)
}

fn legendre_with_derivative(n: usize, z: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = z;
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (z * p1 - p0) / (z * z - 1.0);
    (p1, d)
}

/// Kronrod abscissae (non-negative half, descending), QUADPACK qk21.
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_208_980_317_550,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

/// Gauss weights for the nodes XGK[1], XGK[3], ..., XGK[9].
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

/// One G10/K21 panel: (kronrod value, |kronrod - gauss|).
pub fn gk21<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = fc * WGK[10];
    let mut g = 0.0;
    for j in 0..10 {
        let dx = h * XGK[j];
        let s = f(c - dx) + f(c + dx);
        k += WGK[j] * s;
        if j % 2 == 1 {
            g += WG[j / 2] * s;
        }
    }
    (k * h, ((k - g) * h).abs())
}

/// Nodes and weights of the 21-point Kronrod rule mapped to [a, b], plus the
/// embedded Gauss weights (zero at Kronrod-only nodes).
pub fn gk21_nodes(a: f64, b: f64) -> [(f64, f64, f64); 21] {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut out = [(0.0, 0.0, 0.0); 21];
    for j in 0..10 {
        let wg = if j % 2 == 1 { WG[j / 2] * h } else { 0.0 };
        out[j] = (c - h * XGK[j], WGK[j] * h, wg);
        out[20 - j] = (c + h * XGK[j], WGK[j] * h, wg);
    }
    out[10] = (c, WGK[10] * h, 0.0);
    out
}

#[derive(Clone, Copy, Debug)]
pub struct Adaptive {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_depth: u32,
    /// Upper bound on the number of accepted panels.
    pub max_panels: usize,
}

impl Default for Adaptive {
    fn default() -> Self {
        Adaptive { abs_tol: 1e-15, rel_tol: 1e-13, max_depth: 40, max_panels: 1 << 16 }
    }
}

/// Adaptive bisection with the G10/K21 pair. Returns (value, error estimate).
pub fn adaptive_gk<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, opts: Adaptive) -> (f64, f64) {
    adaptive_gk_seeded(f, a, b, 1, opts)
}

/// As [`adaptive_gk`], starting from `seed` equal panels. Oscillatory
/// integrands need a seed fine enough that no starting panel aliases.
pub fn adaptive_gk_seeded<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, seed: usize, opts: Adaptive) -> (f64, f64) {
    let seed = seed.max(1);
    let step = (b - a) / seed as f64;
    let mut stack = Vec::with_capacity(seed + 64);
    let mut whole = 0.0;
    let mut err = 0.0;
    for p in (0..seed).rev() {
        let lo = a + step * p as f64;
        let hi = if p + 1 == seed { b } else { lo + step };
        let (v, e) = gk21(f, lo, hi);
        whole += v;
        err += e;
        stack.push((lo, hi, v, e, 0u32));
    }
    if !(b > a) {
        return (whole, err);
    }
    let tol = opts.abs_tol.max(opts.rel_tol * whole.abs());
    if err <= tol {
        return (whole, err);
    }
    let mut value = 0.0;
    let mut total_err = 0.0;
    let width = b - a;
    let mut panels = 0usize;
    while let Some((lo, hi, v, e, depth)) = stack.pop() {
        let local_tol = tol * (hi - lo) / width;
        if e <= local_tol || depth >= opts.max_depth || panels + stack.len() >= opts.max_panels {
            panels += 1;
            value += v;
            total_err += e;
            continue;
        }
        let mid = 0.5 * (lo + hi);
        let (vl, el) = gk21(f, lo, mid);
        let (vr, er) = gk21(f, mid, hi);
        stack.push((mid, hi, vr, er, depth + 1));
        stack.push((lo, mid, vl, el, depth + 1));
    }
    (value, total_err)
}

/// Composite Gauss–Legendre with `panels` equal panels of `order` points.
pub fn composite_gl<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, panels: usize, rule: &(Vec<f64>, Vec<f64>)) -> f64 {
    let h = (b - a) / panels as f64;
    let mut acc = 0.0;
    for p in 0..panels {
        let lo = a + h * p as f64;
        let c = lo + 0.5 * h;
        let mut s = 0.0;
        for (x, w) in rule.0.iter().zip(&rule.1) {
            s += w * f(c + 0.5 * h * x);
        }
        acc += 0.5 * h * s;
    }
    acc
}

/// A vertical integration line Re s = `abscissa`, truncated at
/// |Im s| ≤ `half_height`, sampled with spacing `step`.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ContourSpec {
    pub abscissa: f64,
    pub half_height: f64,
    pub step: f64,
}

impl ContourSpec {
    pub const fn new(abscissa: f64, half_height: f64, step: f64) -> Self {
        ContourSpec { abscissa, half_height, step }
    }

    /// Finite parameters, positive step, and a half-height of at least 8
    /// (the e^{s²} weights used on these lines are below e^{-64} there).
    pub fn validate(&self) -> crate::Result<()> {
        let ok = self.abscissa.is_finite() && self.step > 0.0 && self.step.is_finite() && self.half_height >= 8.0;
        if ok && self.half_height.is_finite() {
            Ok(())
        } else {
            Err(crate::Error::domain("ContourSpec", format!("{self:?}")))
        }
    }

    /// As [`ContourSpec::validate`], and the line keeps at least 0.05 from
    /// every real pole abscissa listed.
    pub fn validate_avoiding(&self, poles: &[f64]) -> crate::Result<()> {
        self.validate()?;
        match poles.iter().find(|p| (self.abscissa - **p).abs() < 0.05) {
            Some(p) => Err(crate::Error::Domain {
                function: "ContourSpec",
                detail: format!("abscissa {} within 0.05 of a pole at Re s = {p}", self.abscissa),
            }),
            None => Ok(()),
        }
    }

    pub fn node_count(&self) -> usize {
        2 * (self.half_height / self.step).round() as usize + 1
    }

    /// Points s_j = abscissa + i·τ_j, τ_j = -H + j·step.
    pub fn nodes(&self) -> Vec<Complex64> {
        let n = self.node_count();
        let half = (n / 2) as f64;
        (0..n)
            .map(|j| Complex64::new(self.abscissa, (j as f64 - half) * self.step))
            .collect()
    }

    /// (1/2πi) ∫ f(s) ds along the line, by the trapezoid rule.
    /// Also returns the largest |f| at the two ends, a proxy for the
    /// truncated tail.
    pub fn integrate<F: Fn(Complex64) -> Complex64>(&self, f: F) -> (Complex64, f64) {
        let nodes = self.nodes();
        let mut acc = Complex64::new(0.0, 0.0);
        for s in &nodes {
            acc += f(*s);
        }
        let ends = f(nodes[0]).norm().max(f(nodes[nodes.len() - 1]).norm());
        (acc * (self.step / (2.0 * std::f64::consts::PI)), ends)
    }
}
