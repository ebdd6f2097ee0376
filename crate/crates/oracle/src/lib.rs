//! Multiprecision reference values for the `rwclab` test suites.
//!
//! Everything here runs on `astro-float` at a caller-chosen binary precision
//! and shares no code with the double-precision kernels it checks. The routes
//! are deliberately different from the production ones:
//!
//! * `gamma`: large upward shift plus a long Stirling series with exact
//!   Bernoulli rationals.
//! * `zeta_em`: Euler–Maclaurin with 30 correction terms and a cutoff far past
//!   the production one.
//! * `zeta_eta`: Borwein's alternating-series acceleration of η(s).
//! * `bessel_k_imag_scaled`: trapezoidal rule for the real-line cosh integral,
//!   with enough working digits to absorb its catastrophic cancellation.
//!
//! Nothing in this crate is tuned for speed.

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

const RM: RoundingMode = RoundingMode::ToEven;

/// Complex number with multiprecision parts.
#[derive(Clone, Debug)]
pub struct HpComplex {
    pub re: BigFloat,
    pub im: BigFloat,
}

/// Working context: precision in bits plus the constant cache.
pub struct Oracle {
    p: usize,
    cc: Consts,
    bernoulli: Vec<BigFloat>,
}

impl Oracle {
    /// Context with `digits` decimal digits of working precision.
    pub fn with_digits(digits: usize) -> Self {
        let bits = ((digits as f64 * std::f64::consts::LOG2_10).ceil() as usize + 64) / 64 * 64;
        let mut o = Oracle {
            p: bits,
            cc: Consts::new().expect("constant cache"),
            bernoulli: Vec::new(),
        };
        o.bernoulli = o.bernoulli_even(40);
        o
    }

    pub fn bits(&self) -> usize {
        self.p
    }

    // ---- real helpers -------------------------------------------------

    fn r(&self, x: f64) -> BigFloat {
        BigFloat::from_f64(x, self.p)
    }

    fn ri(&self, n: i64) -> BigFloat {
        BigFloat::from_i64(n, self.p)
    }

    fn add(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.add(b, self.p, RM)
    }

    fn sub(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.sub(b, self.p, RM)
    }

    fn mul(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.mul(b, self.p, RM)
    }

    fn div(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.div(b, self.p, RM)
    }

    fn exp(&mut self, a: &BigFloat) -> BigFloat {
        a.exp(self.p, RM, &mut self.cc)
    }

    fn ln(&mut self, a: &BigFloat) -> BigFloat {
        a.ln(self.p, RM, &mut self.cc)
    }

    fn sin(&mut self, a: &BigFloat) -> BigFloat {
        a.sin(self.p, RM, &mut self.cc)
    }

    fn cos(&mut self, a: &BigFloat) -> BigFloat {
        a.cos(self.p, RM, &mut self.cc)
    }

    fn cosh(&mut self, a: &BigFloat) -> BigFloat {
        a.cosh(self.p, RM, &mut self.cc)
    }

    fn sqrt(&self, a: &BigFloat) -> BigFloat {
        a.sqrt(self.p, RM)
    }

    pub fn pi(&mut self) -> BigFloat {
        self.cc.pi(self.p, RM)
    }

    /// Rounds a multiprecision real to the nearest double.
    pub fn to_f64(&mut self, a: &BigFloat) -> f64 {
        if a.is_zero() {
            return 0.0;
        }
        let s = a.format(Radix::Dec, RM, &mut self.cc).expect("format");
        s.parse::<f64>().expect("decimal literal")
    }

    fn from_rational(&mut self, q: &BigRational) -> BigFloat {
        let num = BigFloat::parse(&q.numer().to_string(), Radix::Dec, self.p, RM, &mut self.cc);
        let den = BigFloat::parse(&q.denom().to_string(), Radix::Dec, self.p, RM, &mut self.cc);
        self.div(&num, &den)
    }

    fn atan2(&mut self, y: &BigFloat, x: &BigFloat) -> BigFloat {
        let pi = self.pi();
        if x.is_zero() {
            let half = self.div(&pi, &self.ri(2));
            return if y.is_negative() { half.neg() } else { half };
        }
        let base = self.div(y, x).atan(self.p, RM, &mut self.cc);
        if x.is_positive() {
            base
        } else if y.is_negative() {
            self.sub(&base, &pi)
        } else {
            self.add(&base, &pi)
        }
    }

    /// B_0, B_2, B_4, … as exact rationals, then rounded to working precision.
    fn bernoulli_even(&mut self, count: usize) -> Vec<BigFloat> {
        let n = 2 * count;
        // Akiyama–Tanigawa over exact rationals.
        let mut a: Vec<BigRational> = vec![BigRational::zero(); n + 1];
        let mut b = Vec::with_capacity(n + 1);
        for m in 0..=n {
            a[m] = BigRational::new(BigInt::one(), BigInt::from(m as i64 + 1));
            for j in (1..=m).rev() {
                let diff = &a[j - 1] - &a[j];
                a[j - 1] = diff * BigRational::from_integer(BigInt::from(j as i64));
            }
            b.push(a[0].clone());
        }
        // The recurrence yields B_1 = +1/2; even-index values are unaffected.
        (0..count).map(|k| self.from_rational(&b[2 * k])).collect()
    }

    // ---- complex helpers ----------------------------------------------

    pub fn c(&self, re: f64, im: f64) -> HpComplex {
        HpComplex { re: self.r(re), im: self.r(im) }
    }

    fn cadd(&self, a: &HpComplex, b: &HpComplex) -> HpComplex {
        HpComplex { re: self.add(&a.re, &b.re), im: self.add(&a.im, &b.im) }
    }

    fn csub(&self, a: &HpComplex, b: &HpComplex) -> HpComplex {
        HpComplex { re: self.sub(&a.re, &b.re), im: self.sub(&a.im, &b.im) }
    }

    fn cmul(&self, a: &HpComplex, b: &HpComplex) -> HpComplex {
        let re = self.sub(&self.mul(&a.re, &b.re), &self.mul(&a.im, &b.im));
        let im = self.add(&self.mul(&a.re, &b.im), &self.mul(&a.im, &b.re));
        HpComplex { re, im }
    }

    fn cscale(&self, a: &HpComplex, k: &BigFloat) -> HpComplex {
        HpComplex { re: self.mul(&a.re, k), im: self.mul(&a.im, k) }
    }

    fn cdiv(&self, a: &HpComplex, b: &HpComplex) -> HpComplex {
        let den = self.add(&self.mul(&b.re, &b.re), &self.mul(&b.im, &b.im));
        let re = self.add(&self.mul(&a.re, &b.re), &self.mul(&a.im, &b.im));
        let im = self.sub(&self.mul(&a.im, &b.re), &self.mul(&a.re, &b.im));
        HpComplex { re: self.div(&re, &den), im: self.div(&im, &den) }
    }

    fn cexp(&mut self, a: &HpComplex) -> HpComplex {
        let m = self.exp(&a.re);
        let c = self.cos(&a.im);
        let s = self.sin(&a.im);
        HpComplex { re: self.mul(&m, &c), im: self.mul(&m, &s) }
    }

    fn cln(&mut self, a: &HpComplex) -> HpComplex {
        let r2 = self.add(&self.mul(&a.re, &a.re), &self.mul(&a.im, &a.im));
        let half = self.r(0.5);
        let lr = self.ln(&r2);
        let re = self.mul(&lr, &half);
        let im = self.atan2(&a.im, &a.re);
        HpComplex { re, im }
    }

    /// n^{-s} for a positive integer n.
    fn npow_neg(&mut self, n: u64, s: &HpComplex) -> HpComplex {
        let ln_n = self.ln(&self.ri(n as i64));
        let e = HpComplex { re: self.mul(&s.re, &ln_n).neg(), im: self.mul(&s.im, &ln_n).neg() };
        self.cexp(&e)
    }

    pub fn to_c64(&mut self, a: &HpComplex) -> (f64, f64) {
        (self.to_f64(&a.re), self.to_f64(&a.im))
    }

    // ---- special functions --------------------------------------------

    /// log Γ(s) for Re s > 0 (branch irrelevant after exponentiation).
    pub fn ln_gamma(&mut self, s: &HpComplex) -> HpComplex {
        let shift = 80u64;
        // Π_{k<shift} (s+k), accumulated as a sum of logarithms.
        let mut log_prod = HpComplex { re: self.r(0.0), im: self.r(0.0) };
        for k in 0..shift {
            let z = HpComplex { re: self.add(&s.re, &self.ri(k as i64)), im: s.im.clone() };
            let lz = self.cln(&z);
            log_prod = self.cadd(&log_prod, &lz);
        }
        let z = HpComplex { re: self.add(&s.re, &self.ri(shift as i64)), im: s.im.clone() };
        let lz = self.cln(&z);
        let half = self.r(0.5);
        let zm = HpComplex { re: self.sub(&z.re, &half), im: z.im.clone() };
        let mut acc = self.csub(&self.cmul(&zm, &lz), &z);
        let pi = self.pi();
        let two_pi = self.mul(&pi, &self.ri(2));
        let ln2p = self.ln(&two_pi);
        let l2p = self.mul(&ln2p, &half);
        acc.re = self.add(&acc.re, &l2p);
        let one = HpComplex { re: self.r(1.0), im: self.r(0.0) };
        let zinv = self.cdiv(&one, &z);
        let zinv2 = self.cmul(&zinv, &zinv);
        let mut zpow = zinv.clone();
        for k in 1..self.bernoulli.len() {
            let kk = k as i64;
            let coef = self.div(&self.bernoulli[k], &self.ri(2 * kk * (2 * kk - 1)));
            let term = self.cscale(&zpow, &coef);
            acc = self.cadd(&acc, &term);
            zpow = self.cmul(&zpow, &zinv2);
        }
        self.csub(&acc, &log_prod)
    }

    /// Γ(s) for Re s > 0.
    pub fn gamma(&mut self, s: &HpComplex) -> HpComplex {
        let lg = self.ln_gamma(s);
        self.cexp(&lg)
    }

    /// ζ(s) by Euler–Maclaurin, valid for Re s > -10, s ≠ 1.
    pub fn zeta_em(&mut self, s: &HpComplex) -> HpComplex {
        let smod = {
            let re = self.to_f64(&s.re);
            let im = self.to_f64(&s.im);
            (re * re + im * im).sqrt()
        };
        let n = (smod.ceil() as u64 + 80).max(100);
        let mut acc = HpComplex { re: self.r(0.0), im: self.r(0.0) };
        for k in 1..n {
            let t = self.npow_neg(k, s);
            acc = self.cadd(&acc, &t);
        }
        let one = HpComplex { re: self.r(1.0), im: self.r(0.0) };
        let n_neg_s = self.npow_neg(n, s);
        let nf = self.ri(n as i64);
        // N^{1-s}/(s-1)
        let n1s = self.cscale(&n_neg_s, &nf);
        let sm1 = self.csub(s, &one);
        acc = self.cadd(&acc, &self.cdiv(&n1s, &sm1));
        acc = self.cadd(&acc, &self.cscale(&n_neg_s, &self.r(0.5)));
        // Σ B_{2k}/(2k)! s(s+1)…(s+2k-2) N^{-s-2k+1}
        let mut rising = s.clone();
        let mut npow = self.cscale(&n_neg_s, &self.div(&self.r(1.0), &nf));
        let nf2 = self.mul(&nf, &nf);
        let mut fact = self.r(2.0);
        for k in 1..self.bernoulli.len() {
            let kk = k as i64;
            if k > 1 {
                let a = HpComplex { re: self.add(&s.re, &self.ri(2 * kk - 3)), im: s.im.clone() };
                let b = HpComplex { re: self.add(&s.re, &self.ri(2 * kk - 2)), im: s.im.clone() };
                rising = self.cmul(&rising, &self.cmul(&a, &b));
                fact = self.mul(&fact, &self.ri((2 * kk - 1) * (2 * kk)));
                npow = self.cscale(&npow, &self.div(&self.r(1.0), &nf2));
            }
            let coef = self.div(&self.bernoulli[k], &fact);
            let term = self.cscale(&self.cmul(&rising, &npow), &coef);
            acc = self.cadd(&acc, &term);
        }
        acc
    }

    /// ζ(s) from η(s) = (1 − 2^{1−s}) ζ(s), with Borwein's acceleration of the
    /// alternating series. Valid for Re s > 0, s ≠ 1.
    pub fn zeta_eta(&mut self, s: &HpComplex) -> HpComplex {
        let t = self.to_f64(&s.im).abs();
        let digits_needed = 40.0 + std::f64::consts::PI * t / std::f64::consts::LN_10;
        let n = ((digits_needed * std::f64::consts::LN_10) / (3.0 + 8f64.sqrt()).ln()).ceil() as usize + 10;
        // d_k = n Σ_{i≤k} (n+i-1)! 4^i / ((n-i)! (2i)!)
        let mut d = Vec::with_capacity(n + 1);
        let mut term = BigRational::new(BigInt::one(), BigInt::from(n as i64));
        let mut sum = BigRational::zero();
        for i in 0..=n {
            if i > 0 {
                let ii = i as i64;
                let nn = n as i64;
                term = term
                    * BigRational::new(
                        BigInt::from(4 * (nn + ii - 1) * (nn - ii + 1)),
                        BigInt::from((2 * ii - 1) * (2 * ii)),
                    );
            }
            sum += &term;
            d.push(sum.clone() * BigRational::from_integer(BigInt::from(n as i64)));
        }
        let dn = self.from_rational(&d[n]);
        let mut acc = HpComplex { re: self.r(0.0), im: self.r(0.0) };
        for k in 0..n {
            let w = self.from_rational(&(d[k].clone() - d[n].clone()));
            let p = self.npow_neg(k as u64 + 1, s);
            let mut t = self.cscale(&p, &w);
            if k % 2 == 1 {
                t = HpComplex { re: t.re.neg(), im: t.im.neg() };
            }
            acc = self.cadd(&acc, &t);
        }
        let eta = self.cscale(&acc, &self.div(&self.r(-1.0), &dn));
        // 1 - 2^{1-s}
        let one = HpComplex { re: self.r(1.0), im: self.r(0.0) };
        let one_minus_s = self.csub(&one, s);
        let ln2 = self.ln(&self.r(2.0));
        let e = self.cscale(&one_minus_s, &ln2);
        let p2 = self.cexp(&e);
        let den = self.csub(&one, &p2);
        self.cdiv(&eta, &den)
    }

    /// ξ(s) = π^{-s/2} Γ(s/2) ζ(s) for 0 < Re s, s ≠ 1.
    pub fn xi(&mut self, s: &HpComplex) -> HpComplex {
        let half = self.r(0.5);
        let s2 = self.cscale(s, &half);
        let lg = self.ln_gamma(&s2);
        let lnpi = {
            let pi = self.pi();
            self.ln(&pi)
        };
        let e = self.csub(&lg, &self.cscale(&s2, &lnpi));
        let g = self.cexp(&e);
        let z = self.zeta_em(s);
        self.cmul(&g, &z)
    }

    /// e^{πT/2} K_{iT}(x) from the trapezoidal rule on
    /// K_{iT}(x) = ∫_0^∞ e^{−x cosh t} cos(T t) dt.
    ///
    /// The working precision must cover the cancellation e^{πT/2 − x};
    /// pick `digits ≥ 30 + (πT/2 − x)/ln 10`.
    pub fn bessel_k_imag_scaled(&mut self, t_order: f64, x: f64) -> f64 {
        let t_order = t_order.abs();
        // Strip half-width d. On Im t = d the integrand grows by
        // e^{T d + x(1 − cos d)} relative to the value, so the trapezoid error
        // is e^{T d + x(1 − cos d) − 2π d / h} times the target accuracy.
        let d = 1.4;
        let target = std::f64::consts::PI * t_order / 2.0 + 80.0;
        let h = 2.0 * std::f64::consts::PI * d / (t_order * d + target + x * (1.0 - d.cos()));
        // Truncate once x cosh t exceeds x + target + 80.
        let tmax = (1.0 + (target + 80.0) / x).acosh();
        let nmax = (tmax / h).ceil() as i64 + 1;
        let xb = self.r(x);
        let tb = self.r(t_order);
        let hb = self.r(h);
        let mut acc = self.exp(&xb.neg());
        acc = self.mul(&acc, &self.r(0.5));
        for k in 1..=nmax {
            let tk = self.mul(&hb, &self.ri(k));
            let ch = self.cosh(&tk);
            let e = self.exp(&self.mul(&xb, &ch).neg());
            let c = self.cos(&self.mul(&tb, &tk));
            acc = self.add(&acc, &self.mul(&e, &c));
        }
        let pi = self.pi();
        let scale = self.exp(&self.div(&self.mul(&pi, &tb), &self.r(2.0)));
        let v = self.mul(&self.mul(&acc, &hb), &scale);
        self.to_f64(&v)
    }

    /// e^{πT/2} K_{iT}(x) with a working precision chosen from (T, x).
    pub fn bessel_k_imag_scaled_auto(t_order: f64, x: f64) -> f64 {
        let loss = (std::f64::consts::PI * t_order.abs() / 2.0 - x).max(0.0) / std::f64::consts::LN_10;
        let mut o = Oracle::with_digits(40 + loss.ceil() as usize);
        o.bessel_k_imag_scaled(t_order, x)
    }

    /// ξ(2iT)/ξ(1+2iT) via ξ(2iT) = ξ(1−2iT).
    pub fn scattering_phi(&mut self, t: f64) -> (f64, f64) {
        let a = self.c(1.0, -2.0 * t);
        let b = self.c(1.0, 2.0 * t);
        let xa = self.xi(&a);
        let xb = self.xi(&b);
        let q = self.cdiv(&xa, &xb);
        self.to_c64(&q)
    }

    /// Convenience: Γ(s) rounded to doubles.
    pub fn gamma_f64(&mut self, re: f64, im: f64) -> (f64, f64) {
        let s = self.c(re, im);
        let g = self.gamma(&s);
        self.to_c64(&g)
    }

    pub fn zeta_em_f64(&mut self, re: f64, im: f64) -> (f64, f64) {
        let s = self.c(re, im);
        let z = self.zeta_em(&s);
        self.to_c64(&z)
    }

    pub fn zeta_eta_f64(&mut self, re: f64, im: f64) -> (f64, f64) {
        let s = self.c(re, im);
        let z = self.zeta_eta(&s);
        self.to_c64(&z)
    }

    pub fn xi_f64(&mut self, re: f64, im: f64) -> (f64, f64) {
        let s = self.c(re, im);
        let z = self.xi(&s);
        self.to_c64(&z)
    }

    /// Square root helper exposed for composite oracles.
    pub fn sqrt_f64(&mut self, x: f64) -> f64 {
        let v = self.sqrt(&self.r(x));
        self.to_f64(&v)
    }
}
