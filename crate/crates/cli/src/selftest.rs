//! A quick invariant suite over every module. Each check reports a measured
//! value against its limit.

use rwclab::arith::{ramanujan_sum, ramanujan_sum_direct};
use rwclab::eisenstein::{EisensteinEvaluator, Point};
use rwclab::mainterm::{self, KernelKind, LogGaussian, Parity, VoronoiCase};
use rwclab::moments::{self, regularization_correction_with_phi, truncated_moments, QuadratureGrid};
use rwclab::specfun::{bessel_k_imag_scaled, xi_complete, zeta_complex};
use rwclab::Complex64;

use crate::config::RunConfig;
use crate::report::{Cell, Format, Report};
use crate::{Failure, Outcome};

/// Faults the hidden --inject-fault flag can plant, for exercising the
/// failure path.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Fault {
    /// The linear coefficient 6 of the fourth-moment correction becomes 6.5.
    A2Constant,
}

struct Check {
    name: &'static str,
    value: f64,
    limit: f64,
}

fn run_checks(fault: Option<Fault>, cfg: &RunConfig) -> rwclab::Result<Vec<Check>> {
    let par = cfg.par();
    let mut out = Vec::new();

    let z2 = zeta_complex(Complex64::new(2.0, 0.0))?;
    out.push(Check { name: "zeta(2) = pi^2/6", value: (z2.re - std::f64::consts::PI.powi(2) / 6.0).abs(), limit: 1e-14 });

    let s = Complex64::new(0.3, 17.2);
    let a = xi_complete(s)?;
    let b = xi_complete(Complex64::new(1.0, 0.0) - s)?;
    out.push(Check { name: "xi functional equation", value: (a - b).norm() / a.norm(), limit: 1e-9 });

    let k = bessel_k_imag_scaled(10.0, 5.0)?.value;
    out.push(Check { name: "scaled K_{10i}(5) reference value", value: (k + 0.718_332_716_656_815_96).abs(), limit: 1e-10 });

    let mut worst = 0i64;
    for c in 1..=30 {
        for m in -30..=30 {
            worst = worst.max((ramanujan_sum(c, m)? - ramanujan_sum_direct(c, m)?).abs());
        }
    }
    out.push(Check { name: "Ramanujan sum closed form = direct sum", value: worst as f64, limit: 0.5 });

    let ev = EisensteinEvaluator::new(8.0)?;
    let mut inv = 0.0f64;
    for z in [Point::new(0.1, 0.9), Point::new(-0.3, 1.2), Point::new(0.45, 0.6)] {
        let (a, b) = (ev.eval_e(z)?, ev.eval_e(z.invert())?);
        inv = inv.max((a - b).norm() / a.norm().max(1.0));
    }
    out.push(Check { name: "E(z) = E(-1/z)", value: inv, limit: 1e-7 });

    let mc = moments::MomentConfig { resolution: cfg.resolution, parallelism: par };
    let r2 = moments::regularized_moment(6.5, moments::settled_cut(6.5), 1, &mc)?;
    out.push(Check { name: "second moment = 4 Re xi'/xi(1+2iT)", value: (r2.ratio - 1.0).abs(), limit: 1e-8 });

    let t = 8.0;
    let mut r4 = Vec::new();
    for y in [8.0, 12.0] {
        let grid = QuadratureGrid::new(t, y, &cfg.resolution)?;
        let raw = truncated_moments(&ev, &grid, par)?.i4;
        let mut corr = regularization_correction_with_phi(t, ev.phi(), y, 2)?;
        if fault == Some(Fault::A2Constant) {
            corr += 0.5 * y;
        }
        r4.push(raw - corr);
    }
    out.push(Check {
        name: "regularized fourth moment independent of Y",
        value: ((r4[0] - r4[1]) / r4[0]).abs(),
        limit: 1e-6,
    });

    let case = VoronoiCase { kind: KernelKind::Tau, h: 2, c: 5, scale: 50.0, t: 0.0 };
    let v = mainterm::voronoi_identity_check(case, &LogGaussian::default(), par)?;
    out.push(Check { name: "Voronoi identity for tau(n)", value: v.gap, limit: 1e-10 });

    let f = mainterm::dirichlet_f(Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), 10.0)?;
    let want = zeta_complex(Complex64::new(1.0, 20.0))?.norm().powi(4) * 6.0 / std::f64::consts::PI.powi(2);
    out.push(Check { name: "F(0,0) = |zeta(1+2iT)|^4/zeta(2)", value: (f.re - want).abs() / want, limit: 1e-12 });

    let left = rwclab::quad::ContourSpec::new(-0.25, 10.0, 1.0 / 64.0);
    let a = mainterm::kernel_v1(30.0, 20.0, Parity::Even, &cfg.kernel_contour)?;
    let b = mainterm::kernel_v1(30.0, 20.0, Parity::Even, &left)?;
    out.push(Check { name: "V1 contour shift picks up residue 1", value: (a - b - 1.0).abs(), limit: 1e-10 });

    Ok(out)
}

pub fn run(fault: Option<&str>, cfg: &RunConfig) -> Result<Outcome, Failure> {
    let fault = match fault {
        None => None,
        Some("a2-constant") => Some(Fault::A2Constant),
        Some(other) => return Err(Failure::Usage(format!("unknown fault {other:?}"))),
    };
    let checks = run_checks(fault, cfg)?;
    let mut report = Report::new(["check", "status", "value", "limit"]);
    let mut failures = Vec::new();
    for c in checks {
        let ok = c.value <= c.limit;
        if !ok {
            failures.push(format!("{} ({:e} > {:e})", c.name, c.value, c.limit));
        }
        report.push(vec![c.name.into(), Cell::from(if ok { "PASS" } else { "FAIL" }), c.value.into(), c.limit.into()]);
    }
    Ok(Outcome { report, default_format: Format::Csv, failures })
}
