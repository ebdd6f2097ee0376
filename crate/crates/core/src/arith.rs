//! Divisor sums, τ(m, 2T), Ramanujan and Kloosterman sums, Möbius.

use num_complex::Complex64;
use std::f64::consts::TAU;

use crate::error::{Error, Result};

/// Divisors of n ≥ 1 in increasing order, by trial division.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Prime factorisation as (p, exponent) pairs.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a as i64
}

/// Inverse of h modulo c (c ≥ 1, gcd(h, c) = 1), in [0, c).
pub fn mod_inverse(h: i64, c: i64) -> Option<i64> {
    let (mut r0, mut r1) = (h.rem_euclid(c) as i128, c as i128);
    let (mut s0, mut s1) = (1i128, 0i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    (r0 == 1).then(|| s0.rem_euclid(c as i128) as i64)
}

pub fn mobius(n: u64) -> i64 {
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n).iter().fold(n, |acc, &(p, _)| acc / p * (p - 1))
}

/// e(k/c) = exp(2πi k/c) with k reduced mod c first.
pub fn e_frac(k: i128, c: i64) -> Complex64 {
    let r = k.rem_euclid(c as i128) as f64 / c as f64;
    Complex64::from_polar(1.0, TAU * r)
}

/// σ_w(n) = Σ_{d | n} d^w.
pub fn sigma_complex(n: i64, w: Complex64) -> Result<Complex64> {
    if n < 1 {
        return Err(Error::domain("sigma_complex", format!("n = {n} must be ≥ 1")));
    }
    Ok(divisors(n as u64).into_iter().map(|d| (w * (d as f64).ln()).exp()).sum())
}

/// τ(m, 2T) = Σ_{ab = m} (a/b)^{2iT}, by direct enumeration of factor pairs.
pub fn tau_shifted(m: i64, t: f64) -> Result<Complex64> {
    if m < 1 {
        return Err(Error::domain("tau_shifted", format!("m = {m} must be ≥ 1")));
    }
    let m = m as u64;
    Ok(divisors(m)
        .into_iter()
        .map(|a| Complex64::from_polar(1.0, 2.0 * t * (a as f64 / (m / a) as f64).ln()))
        .sum())
}

/// τ(m, 2T) through σ_{4iT}(m) / m^{2iT}.
pub fn tau_shifted_via_sigma(m: i64, t: f64) -> Result<Complex64> {
    let s = sigma_complex(m, Complex64::new(0.0, 4.0 * t))?;
    Ok(s * Complex64::from_polar(1.0, -2.0 * t * (m as f64).ln()))
}

/// Real part of τ(m, 2T); the sum is real because (a, b) and (b, a) pair up
/// into conjugates.
pub fn tau_shifted_real(m: u64, t: f64) -> f64 {
    let mut acc = 0.0;
    for a in divisors(m) {
        if a * a > m {
            break;
        }
        let b = m / a;
        acc += if a == b { 1.0 } else { 2.0 * (t * 2.0 * (b as f64 / a as f64).ln()).cos() };
    }
    acc
}

/// Ramanujan sum r_c(m) = μ(c/g)·φ(c)/φ(c/g), g = gcd(c, m).
pub fn ramanujan_sum(c: i64, m: i64) -> Result<i64> {
    if c < 1 {
        return Err(Error::domain("ramanujan_sum", format!("c = {c} must be ≥ 1")));
    }
    let g = gcd(c, m) as u64;
    let c = c as u64;
    let q = c / g;
    Ok(mobius(q) * (euler_phi(c) / euler_phi(q)) as i64)
}

/// Ramanujan sum by summing e(m h̄ / c) over units h mod c. The float sum
/// is rounded; the distance to the nearest integer is checked.
pub fn ramanujan_sum_direct(c: i64, m: i64) -> Result<i64> {
    if c < 1 {
        return Err(Error::domain("ramanujan_sum_direct", format!("c = {c} must be ≥ 1")));
    }
    let mut acc = 0.0;
    for h in 0..c {
        if let Some(hb) = mod_inverse(h, c) {
            acc += e_frac(m as i128 * hb as i128, c).re;
        }
    }
    let r = acc.round();
    if (acc - r).abs() > 1e-6 {
        return Err(Error::Invariant(format!("r_{c}({m}) summed to non-integer {acc}")));
    }
    Ok(r as i64)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KloostermanArgs {
    pub n: i64,
    pub m: i64,
    pub c: i64,
}

/// S(n, m; c) = Σ*_{h mod c} e((n h + m h̄)/c).
pub fn kloosterman(args: KloostermanArgs) -> Result<Complex64> {
    let KloostermanArgs { n, m, c } = args;
    if c < 1 {
        return Err(Error::domain("kloosterman", format!("c = {c} must be ≥ 1")));
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for h in 0..c {
        if let Some(hb) = mod_inverse(h, c) {
            acc += e_frac(n as i128 * h as i128 + m as i128 * hb as i128, c);
        }
    }
    Ok(acc)
}

/// Number of divisors τ(n).
pub fn divisor_count(n: u64) -> u64 {
    factorize(n).iter().map(|&(_, e)| e as u64 + 1).product()
}
