//! The spectral side: a weighted sum over Hecke–Maass cusp forms assembled
//! from externally supplied L-values.

use std::collections::BTreeSet;
use std::f64::consts::{LN_2, PI};
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub use crate::mainterm::Parity;
use crate::error::{Error, Result};
use crate::par::{self, Parallelism};
use crate::specfun::{log_gamma_complex, log_xi};
use crate::Complex64;

/// Odd forms must have |L(½)| at most this.
const ODD_CENTRAL_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MaassFormRecord {
    /// Spectral parameter t_j (eigenvalue ¼ + t_j²).
    pub t: f64,
    pub parity: Parity,
    /// L(½, u_j).
    #[serde(rename = "L_half")]
    pub l_half: f64,
    /// |L(½ + 2iT, u_j)| at the dataset's T.
    #[serde(rename = "L_shift_abs")]
    pub l_shift_abs: f64,
    /// L(1, sym² u_j).
    #[serde(rename = "L_sym2")]
    pub l_sym2: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpectralDataset {
    #[serde(rename = "T")]
    pub t: f64,
    pub provenance: String,
    pub forms: Vec<MaassFormRecord>,
}

const TOP_FIELDS: [&str; 3] = ["T", "provenance", "forms"];
const FORM_FIELDS: [&str; 5] = ["t", "parity", "L_half", "L_shift_abs", "L_sym2"];

fn parse_error(e: serde_json::Error) -> Error {
    Error::Parse { line: e.line(), column: e.column(), message: e.to_string() }
}

/// Collects missing and unknown keys over the whole document, so one error
/// lists every schema problem.
fn check_schema(doc: &Value) -> Result<()> {
    let mut missing = BTreeSet::new();
    let mut unknown = BTreeSet::new();
    let check = |obj: &serde_json::Map<String, Value>,
                 fields: &[&str],
                 prefix: &str,
                 missing: &mut BTreeSet<String>,
                 unknown: &mut BTreeSet<String>| {
        for f in fields {
            if !obj.contains_key(*f) {
                missing.insert(format!("{prefix}{f}"));
            }
        }
        for k in obj.keys() {
            if !fields.contains(&k.as_str()) {
                unknown.insert(format!("{prefix}{k}"));
            }
        }
    };
    let Some(top) = doc.as_object() else {
        return Err(Error::Schema { missing: TOP_FIELDS.iter().map(|s| s.to_string()).collect(), unknown: vec![] });
    };
    check(top, &TOP_FIELDS, "", &mut missing, &mut unknown);
    if let Some(forms) = top.get("forms").and_then(Value::as_array) {
        for (i, f) in forms.iter().enumerate() {
            match f.as_object() {
                Some(o) => check(o, &FORM_FIELDS, &format!("forms[{i}]."), &mut missing, &mut unknown),
                None => {
                    missing.insert(format!("forms[{i}]"));
                }
            }
        }
    }
    if missing.is_empty() && unknown.is_empty() {
        Ok(())
    } else {
        Err(Error::Schema { missing: missing.into_iter().collect(), unknown: unknown.into_iter().collect() })
    }
}

impl SpectralDataset {
    pub fn empty(t: f64, provenance: impl Into<String>) -> Result<Self> {
        let ds = SpectralDataset { t, provenance: provenance.into(), forms: vec![] };
        ds.validate()?;
        Ok(ds)
    }

    /// Parses, checks the schema and invariants, and sorts by t.
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: Value = serde_json::from_str(text).map_err(parse_error)?;
        check_schema(&doc)?;
        // Re-parse from text so type errors carry a position.
        let mut ds: SpectralDataset = serde_json::from_str(text).map_err(parse_error)?;
        ds.validate()?;
        ds.forms.sort_by(|a, b| a.t.total_cmp(&b.t));
        Ok(ds)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("dataset serializes");
        s.push('\n');
        s
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.t > 0.0 && self.t.is_finite()) {
            return Err(Error::Invariant(format!("dataset T = {} must be positive", self.t)));
        }
        for (i, r) in self.forms.iter().enumerate() {
            let finite = [r.t, r.l_half, r.l_shift_abs, r.l_sym2].iter().all(|v| v.is_finite());
            if !finite {
                return Err(Error::Invariant(format!("forms[{i}]: non-finite value")));
            }
            if !(r.t > 0.0) {
                return Err(Error::Invariant(format!("forms[{i}]: t = {} must be positive", r.t)));
            }
            if !(r.l_sym2 > 0.0) {
                return Err(Error::Invariant(format!("forms[{i}]: L_sym2 = {} must be positive", r.l_sym2)));
            }
            if r.l_shift_abs < 0.0 {
                return Err(Error::Invariant(format!("forms[{i}]: L_shift_abs = {} is negative", r.l_shift_abs)));
            }
            if r.parity == Parity::Odd && r.l_half.abs() > ODD_CENTRAL_TOL {
                return Err(Error::Invariant(format!("forms[{i}]: odd form with L_half = {}", r.l_half)));
            }
        }
        Ok(())
    }

    /// Records sorted by t with equal T, concatenated.
    pub fn concat(&self, other: &SpectralDataset) -> Result<SpectralDataset> {
        if self.t != other.t {
            return Err(Error::Invariant(format!("datasets at T = {} and T = {}", self.t, other.t)));
        }
        let mut forms = self.forms.clone();
        forms.extend(other.forms.iter().cloned());
        forms.sort_by(|a, b| a.t.total_cmp(&b.t));
        Ok(SpectralDataset { t: self.t, provenance: self.provenance.clone(), forms })
    }
}

pub fn load_dataset(path: impl AsRef<Path>) -> Result<SpectralDataset> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io { path: path.to_path_buf(), source })?;
    SpectralDataset::from_json(&text)
}

pub fn save_dataset(ds: &SpectralDataset, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, ds.to_json()).map_err(|source| Error::Io { path: path.to_path_buf(), source })
}

/// ln |Γ_R(z)|, Γ_R(z) = π^{-z/2} Γ(z/2).
fn ln_abs_gamma_r(z: Complex64) -> Result<f64> {
    Ok(-0.5 * z.re * PI.ln() + log_gamma_complex(z * 0.5)?.re)
}

/// ln |Γ_R(s+it_j) Γ_R(s-it_j)| (even) or ln |Γ_R(1+s+it_j) Γ_R(1+s-it_j)| (odd).
pub fn log_completed_lambda_factors(rec: &MaassFormRecord, s: Complex64) -> Result<f64> {
    let base = match rec.parity {
        Parity::Even => s,
        Parity::Odd => s + 1.0,
    };
    let it = Complex64::new(0.0, rec.t);
    Ok(ln_abs_gamma_r(base + it)? + ln_abs_gamma_r(base - it)?)
}

/// Modulus of the archimedean completion factor of L(s, u_j).
pub fn completed_lambda_factors(rec: &MaassFormRecord, s: Complex64) -> Result<f64> {
    Ok(log_completed_lambda_factors(rec, s)?.exp())
}

/// ln cosh(x).
fn log_cosh(x: f64) -> f64 {
    let a = x.abs();
    a + (-2.0 * a).exp().ln_1p() - LN_2
}

/// Natural log of one term
///   (cosh(πt_j)/2) |Λ(½+2iT, u_j)|² Λ(½, u_j)² / (L(1, sym² u_j) |ξ(1+2iT)|⁴),
/// or None when an L-value vanishes.
pub fn log_spectral_term(rec: &MaassFormRecord, t: f64, log_xi_abs: f64) -> Result<Option<f64>> {
    if rec.l_half == 0.0 || rec.l_shift_abs == 0.0 {
        return Ok(None);
    }
    let shifted = log_completed_lambda_factors(rec, Complex64::new(0.5, 2.0 * t))?;
    let central = log_completed_lambda_factors(rec, Complex64::new(0.5, 0.0))?;
    let log = log_cosh(PI * rec.t) - LN_2
        + 2.0 * (rec.l_shift_abs.ln() + shifted)
        + 2.0 * (rec.l_half.abs().ln() + central)
        - rec.l_sym2.ln()
        - 4.0 * log_xi_abs;
    Ok(Some(log))
}

/// Term-by-term values of the spectral sum, in dataset order.
pub fn spectral_terms(ds: &SpectralDataset, p: Parallelism) -> Result<Vec<f64>> {
    let log_xi_abs = log_xi(Complex64::new(1.0, 2.0 * ds.t))?.re;
    par::map(p, &ds.forms, |rec| {
        Ok(match log_spectral_term(rec, ds.t, log_xi_abs)? {
            None => 0.0,
            Some(l) if l > f64::MAX_EXP as f64 * LN_2 - 1.0 => {
                return Err(Error::Overflow(format!("term at t = {} has log {l}", rec.t)));
            }
            Some(l) => l.exp(),
        })
    })
    .into_iter()
    .collect()
}

pub fn spectral_sum(ds: &SpectralDataset, p: Parallelism) -> Result<f64> {
    Ok(par::ordered_sum(spectral_terms(ds, p)?))
}

/// (48/π) log² T, the size the full spectral sum is expected to reach.
pub fn spectral_reference(t: f64) -> f64 {
    48.0 / PI * t.ln().powi(2)
}

/// The dataset split by |t_j| against the bulk window
/// T^{1-ε} < |t_j| < 2T - T^{1-ε}.
#[derive(Clone, Debug, PartialEq)]
pub struct BulkPartition {
    pub low: SpectralDataset,
    pub bulk: SpectralDataset,
    pub high: SpectralDataset,
}

pub fn bulk_partition(ds: &SpectralDataset, eps_param: f64) -> Result<BulkPartition> {
    if !(eps_param > 0.0 && eps_param < 0.5) {
        return Err(Error::domain("bulk_filter", format!("eps_param = {eps_param} not in (0, 0.5)")));
    }
    let edge = ds.t.powf(1.0 - eps_param);
    let (lo, hi) = (edge, 2.0 * ds.t - edge);
    let pick = |f: &dyn Fn(f64) -> bool| SpectralDataset {
        t: ds.t,
        provenance: ds.provenance.clone(),
        forms: ds.forms.iter().filter(|r| f(r.t.abs())).cloned().collect(),
    };
    Ok(BulkPartition {
        low: pick(&|t| t <= lo),
        bulk: pick(&|t| t > lo && t < hi),
        high: pick(&|t| t >= hi && t > lo),
    })
}

pub fn bulk_filter(ds: &SpectralDataset, eps_param: f64) -> Result<SpectralDataset> {
    Ok(bulk_partition(ds, eps_param)?.bulk)
}
