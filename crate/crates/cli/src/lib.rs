//! Command-line front end for rwclab: moment scans, main-term tables,
//! identity checks, the spectral sum, point evaluations and a self test.

pub mod config;
pub mod report;
mod selftest;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use rwclab::mainterm::{self, AsymptoticMode, KernelKind, LogGaussian, VoronoiCase};
use rwclab::moments::{self, MomentConfig};
use rwclab::{spectral, specfun, Complex64};

use config::RunConfig;
use report::{emit_report, Format, Report};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_FAILED: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "rwclab", version, about = "Fourth moment of Eisenstein series and its main terms")]
pub struct Cli {
    /// JSON file with default settings; flags take precedence.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output file (stdout when absent).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Worker threads; defaults to RWC_LAB_THREADS, then the core count.
    #[arg(long, global = true)]
    pub parallelism: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Regularized moments over a list of T.
    /// CSV columns: T,Y,raw,correction,regularized,ratio.
    MomentScan(ScanArgs),
    /// Numerical M₁, M₂ against the asymptotic main term.
    /// CSV columns: T,M1,M2,asymptotic,ratio,zeta_log_derivative.
    Mainterm(TArgs),
    /// Both Voronoi summation identities on the default case matrix.
    /// Columns: kind,h,c,scale,T,lhs_re,lhs_im,rhs_re,rhs_im,main_re,main_im,dual_re,dual_im,gap,tolerance,pass.
    VoronoiVerify,
    /// Spectral sum from a Maass-form dataset.
    /// Columns: T,forms,bulk_forms,sum,bulk_sum,reference,ratio.
    SpectralSum(SpectralArgs),
    /// Scaled K_{iT}(x)·e^{πT/2}. Columns: T,x,value,turning_point.
    Bessel(BesselArgs),
    /// ζ(s). Columns: re,im,zeta_re,zeta_im.
    Zeta(ZetaArgs),
    /// Fast invariant suite. Columns: check,status,value,limit.
    Selftest(SelftestArgs),
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[arg(long = "T", value_delimiter = ',')]
    pub t: Vec<f64>,
    /// Cut height; the settled cut for each T when absent.
    #[arg(long = "Y")]
    pub y: Option<f64>,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..=2))]
    pub k: Option<u32>,
    /// Double every grid resolution setting.
    #[arg(long)]
    pub refine: bool,
}

#[derive(Debug, Args)]
pub struct TArgs {
    #[arg(long = "T", value_delimiter = ',')]
    pub t: Vec<f64>,
}

#[derive(Debug, Args)]
pub struct SpectralArgs {
    #[arg(long)]
    pub data: PathBuf,
    /// Bulk window exponent.
    #[arg(long)]
    pub eps: Option<f64>,
}

#[derive(Debug, Args)]
pub struct BesselArgs {
    #[arg(long = "T", allow_hyphen_values = true)]
    pub t: f64,
    #[arg(long)]
    pub x: f64,
}

#[derive(Debug, Args)]
pub struct ZetaArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub re: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub im: f64,
}

#[derive(Debug, Args)]
pub struct SelftestArgs {
    #[arg(long, hide = true)]
    pub inject_fault: Option<String>,
}

/// Why a command stopped.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Verification(String),
}

impl From<rwclab::Error> for Failure {
    fn from(e: rwclab::Error) -> Self {
        use rwclab::Error::*;
        match e {
            Domain { .. } | Parse { .. } | Schema { .. } | Io { .. } => Failure::Usage(e.to_string()),
            _ => Failure::Verification(e.to_string()),
        }
    }
}

impl From<report::ReportError> for Failure {
    fn from(e: report::ReportError) -> Self {
        Failure::Usage(e.to_string())
    }
}

/// Output of one command: the table, plus the names of failed checks.
pub struct Outcome {
    pub report: Report,
    pub default_format: Format,
    pub failures: Vec<String>,
}

fn t_list(flag: &[f64], cfg: &RunConfig) -> Result<Vec<f64>, Failure> {
    let list = if flag.is_empty() { cfg.file.t.clone().unwrap_or_default() } else { flag.to_vec() };
    if list.is_empty() {
        return Err(Failure::Usage("no T values given (--T or \"T\" in the config file)".into()));
    }
    if let Some(bad) = list.iter().find(|t| !t.is_finite()) {
        return Err(Failure::Usage(format!("T = {bad} is not finite")));
    }
    Ok(list)
}

fn moment_scan(a: &ScanArgs, cfg: &RunConfig) -> Result<Outcome, Failure> {
    let ts = t_list(&a.t, cfg)?;
    let k = a.k.or(cfg.file.k).unwrap_or(2);
    if !(1..=2).contains(&k) {
        return Err(Failure::Usage(format!("k = {k} must be 1 or 2")));
    }
    let y = a.y.or(cfg.file.y);
    let resolution = if a.refine { cfg.resolution.refined() } else { cfg.resolution };
    let mc = MomentConfig { resolution, parallelism: cfg.par() };
    let mut report = Report::new(["T", "Y", "raw", "correction", "regularized", "ratio"]);
    let mut failures = Vec::new();
    // Rows with a shared Y go through one scan; otherwise each T uses its own cut.
    let rows: Vec<(f64, Result<moments::MomentResult, String>)> = match y {
        Some(y) => moments::rwc_scan(&ts, y, k, &mc)?.into_iter().map(|r| (r.t, r.result)).collect(),
        None => ts
            .iter()
            .map(|&t| (t, moments::regularized_moment(t, moments::settled_cut(t), k, &mc).map_err(|e| e.to_string())))
            .collect(),
    };
    for (t, r) in rows {
        match r {
            Ok(m) => report.push(vec![m.t.into(), m.y_cut.into(), m.raw.into(), m.correction.into(), m.regularized.into(), m.ratio.into()]),
            Err(e) => failures.push(format!("T = {t}: {e}")),
        }
    }
    Ok(Outcome { report, default_format: Format::Csv, failures })
}

fn mainterm_table(a: &TArgs, cfg: &RunConfig) -> Result<Outcome, Failure> {
    let ts = t_list(&a.t, cfg)?;
    let mut report = Report::new(["T", "M1", "M2", "asymptotic", "ratio", "zeta_log_derivative"]);
    for t in ts {
        let m = mainterm::mainterm_residue_numeric(t, &cfg.residue_contours, cfg.par())?;
        let asym = mainterm::mainterm_asymptotic(t, AsymptoticMode::Full)?;
        let d = mainterm::zeta_log_derivative_diag(t)?;
        report.push(vec![t.into(), m.m1.into(), m.m2.into(), asym.into(), (m.m1 / asym).into(), d.into()]);
    }
    Ok(Outcome { report, default_format: Format::Csv, failures: vec![] })
}

/// (kind, h, c, scale, T) rows checked by `voronoi-verify`.
pub fn default_voronoi_matrix() -> Vec<VoronoiCase> {
    let mut v = Vec::new();
    for (h, c) in [(1, 1), (2, 5), (3, 7)] {
        for scale in [50.0, 200.0] {
            v.push(VoronoiCase { kind: KernelKind::Tau, h, c, scale, t: 0.0 });
        }
    }
    v.push(VoronoiCase { kind: KernelKind::TauShifted, h: 1, c: 3, scale: 100.0, t: 5.0 });
    v
}

fn voronoi_verify(cfg: &RunConfig) -> Result<Outcome, Failure> {
    let phi = LogGaussian::default();
    let mut report = Report::new([
        "kind", "h", "c", "scale", "T", "lhs_re", "lhs_im", "rhs_re", "rhs_im", "main_re", "main_im", "dual_re", "dual_im", "gap",
        "tolerance", "pass",
    ]);
    let mut failures = Vec::new();
    for case in default_voronoi_matrix() {
        let (name, tol) = match case.kind {
            KernelKind::Tau => ("tau", cfg.tolerances.voronoi_tau),
            KernelKind::TauShifted => ("tau_shifted", cfg.tolerances.voronoi_shifted),
        };
        let r = mainterm::voronoi_identity_check(case, &phi, cfg.par())?;
        let pass = r.gap < tol;
        if !pass {
            failures.push(format!("voronoi {name} h={} c={} scale={}: gap {:e}", case.h, case.c, case.scale, r.gap));
        }
        report.push(vec![
            name.into(),
            case.h.into(),
            case.c.into(),
            case.scale.into(),
            case.t.into(),
            r.lhs.re.into(),
            r.lhs.im.into(),
            r.rhs.re.into(),
            r.rhs.im.into(),
            r.main.re.into(),
            r.main.im.into(),
            r.dual.re.into(),
            r.dual.im.into(),
            r.gap.into(),
            tol.into(),
            pass.into(),
        ]);
    }
    Ok(Outcome { report, default_format: Format::Json, failures })
}

fn spectral_sum(a: &SpectralArgs, cfg: &RunConfig) -> Result<Outcome, Failure> {
    let ds = spectral::load_dataset(&a.data)?;
    let eps = a.eps.or(cfg.file.eps).unwrap_or(0.1);
    let bulk = spectral::bulk_filter(&ds, eps)?;
    let total = spectral::spectral_sum(&ds, cfg.par())?;
    let bulk_sum = spectral::spectral_sum(&bulk, cfg.par())?;
    let reference = spectral::spectral_reference(ds.t);
    let mut report = Report::new(["T", "forms", "bulk_forms", "sum", "bulk_sum", "reference", "ratio"]);
    report.push(vec![
        ds.t.into(),
        ds.forms.len().into(),
        bulk.forms.len().into(),
        total.into(),
        bulk_sum.into(),
        reference.into(),
        (total / reference).into(),
    ]);
    Ok(Outcome { report, default_format: Format::Csv, failures: vec![] })
}

fn bessel(a: &BesselArgs) -> Result<Outcome, Failure> {
    let v = specfun::bessel_k_imag_scaled(a.t, a.x)?;
    let mut report = Report::new(["T", "x", "value", "turning_point"]);
    report.push(vec![a.t.into(), a.x.into(), v.value.into(), v.turning_point.into()]);
    Ok(Outcome { report, default_format: Format::Csv, failures: vec![] })
}

fn zeta(a: &ZetaArgs) -> Result<Outcome, Failure> {
    let z = specfun::zeta_complex(Complex64::new(a.re, a.im))?;
    let mut report = Report::new(["re", "im", "zeta_re", "zeta_im"]);
    report.push(vec![a.re.into(), a.im.into(), z.re.into(), z.im.into()]);
    Ok(Outcome { report, default_format: Format::Csv, failures: vec![] })
}

/// Runs a parsed command under the configured thread pool.
pub fn run_command(cli: &Cli) -> Result<Outcome, Failure> {
    let cfg = RunConfig::resolve(cli.config.as_deref(), cli.out.clone(), cli.format, cli.parallelism).map_err(Failure::Usage)?;
    rwclab::par::with_threads(cfg.parallelism, || match &cli.command {
        Command::MomentScan(a) => moment_scan(a, &cfg),
        Command::Mainterm(a) => mainterm_table(a, &cfg),
        Command::VoronoiVerify => voronoi_verify(&cfg),
        Command::SpectralSum(a) => spectral_sum(a, &cfg),
        Command::Bessel(a) => bessel(a),
        Command::Zeta(a) => zeta(a),
        Command::Selftest(a) => selftest::run(a.inject_fault.as_deref(), &cfg),
    })
    .and_then(|o| {
        let format = cfg.format.unwrap_or(o.default_format);
        emit_report(&o.report, format, cfg.out.as_deref())?;
        Ok(o)
    })
}

/// Parses `args`, runs the command and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match run_command(&cli) {
        Ok(o) if o.failures.is_empty() => EXIT_OK,
        Ok(o) => {
            for f in &o.failures {
                eprintln!("FAIL: {f}");
            }
            EXIT_FAILED
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            EXIT_USAGE
        }
        Err(Failure::Verification(m)) => {
            eprintln!("FAIL: {m}");
            EXIT_FAILED
        }
    }
}
