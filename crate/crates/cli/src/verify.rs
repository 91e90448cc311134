use bhlab::classical::{self, PendulumState, WellState};
use bhlab::exact::{zero_d_closed_form, zero_d_truncated_sum};
use bhlab::fresnel::{self, FresnelKernelSpec, KernelSign, TrotterStep0D};
use bhlab::girsanov::{self, VPolynomial};
use bhlab::gp::{self, DriftMode, GPState};
use bhlab::{build_two_site_params, Error, RealMatrix, TimeGrid, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// Knobs for exercising the failure paths of [`verify_suite`].
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct VerifyOptions {
    /// Add an antisymmetric perturbation to the hopping matrices fed to the
    /// Girsanov checks.
    pub inject_asymmetric_hopping: bool,
    /// Replace the convergence target of every Fresnel quadrature.
    pub quadrature_tolerance: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    /// Measured discrepancy; for a quadrature that did not converge, its
    /// error estimate.
    pub observed: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifySummary {
    pub passed: bool,
    pub total: usize,
    pub failed: usize,
    pub checks: Vec<CheckResult>,
}

impl VerifySummary {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("summary serializes to JSON")
    }

    /// Tab-separated `STATUS name observed tolerance detail` lines.
    pub fn to_lines(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let tag = if c.passed { "PASS" } else { "FAIL" };
            out.push_str(&format!("{tag}\t{}\t{:.3e}\t{:e}\t{}\n", c.name, c.observed, c.tolerance, c.detail));
        }
        out.push_str(&format!("summary\t{}/{} passed\n", self.total - self.failed, self.total));
        out
    }
}

fn check(name: &'static str, observed: f64, tolerance: f64, detail: impl Into<String>) -> CheckResult {
    CheckResult { name, observed, tolerance, passed: observed <= tolerance, detail: detail.into() }
}

fn failed(name: &'static str, observed: f64, tolerance: f64, detail: String) -> CheckResult {
    CheckResult { name, observed, tolerance, passed: false, detail }
}

fn random_complex(rng: &mut ChaCha8Rng) -> C64 {
    C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

fn random_polynomial(rng: &mut ChaCha8Rng, sites: usize) -> VPolynomial {
    let mut p = VPolynomial::zero(sites);
    for _ in 0..5 {
        let mut e = vec![0u32; 2 * sites];
        for _ in 0..rng.gen_range(0..=4) {
            e[rng.gen_range(0..2 * sites)] += 1;
        }
        p.add_term(e, random_complex(rng));
    }
    p
}

fn random_hopping(rng: &mut ChaCha8Rng, sites: usize, asymmetric: bool) -> RealMatrix {
    let mut m = RealMatrix::zeros(sites);
    for i in 0..sites {
        for j in 0..=i {
            let v = rng.gen_range(-1.0..1.0);
            m.set(i, j, v);
            m.set(j, i, v);
        }
    }
    if asymmetric && sites > 1 {
        m.set(0, 1, m.get(0, 1) + 0.5);
        m.set(1, 0, m.get(1, 0) - 0.5);
    }
    m
}

fn girsanov_checks(opts: &VerifyOptions) -> Vec<CheckResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(20240521);
    let mut identity: f64 = 0.0;
    let mut conservation: f64 = 0.0;
    let mut error = None;
    for _ in 0..50 {
        let sites = rng.gen_range(2..=3);
        let m = rng.gen_range(0..=3);
        let u = rng.gen_range(0.0..2.0);
        let f = random_polynomial(&mut rng, sites);
        let eps = random_hopping(&mut rng, sites, opts.inject_asymmetric_hopping);
        match girsanov::check_girsanov_identity(&f, m, &eps, u) {
            Ok(r) => identity = identity.max(r),
            Err(e) => error = Some(e.to_string()),
        }
        if let Ok(l0x) = girsanov::apply_l0(&VPolynomial::casimir(sites), &eps) {
            conservation = conservation.max(l0x.max_abs_coeff());
        }
    }
    let mut out = Vec::new();
    match error {
        Some(e) => out.push(failed("girsanov_identity", f64::INFINITY, 1e-12, e)),
        None => out.push(check("girsanov_identity", identity, 1e-12, "max coefficient residual over 50 cases")),
    }
    out.push(check("hopping_conserves_norm", conservation, 1e-14, "max coefficient of L0 (v . vbar)"));
    out
}

fn classical_checks() -> Vec<CheckResult> {
    let grid = TimeGrid::new(20.0, 1e-4).unwrap();
    let mut equiv: f64 = 0.0;
    let mut drift: f64 = 0.0;
    for g in [0.5, 1.0, 1.8, 2.2, 3.0, 6.0] {
        let (Ok(p), Ok(w)) = (classical::pendulum_trajectory(1.0, g, &grid), classical::well_trajectory(1.0, g, &grid))
        else {
            return vec![failed("pendulum_double_well", f64::INFINITY, 1e-6, format!("integration failed at g = {g}"))];
        };
        let e0 = classical::pendulum_energy(1.0, PendulumState::initial(g));
        let w0 = classical::well_energy(1.0, g, WellState::initial());
        for (a, b) in p.iter().zip(&w) {
            equiv = equiv.max((a.phi_dot / (2.0 * g) - b.rho12).abs());
            drift = drift.max((classical::pendulum_energy(1.0, *a) - e0).abs() / e0.abs().max(1.0));
            drift = drift.max((classical::well_energy(1.0, g, *b) - w0).abs() / w0.abs().max(1.0));
        }
    }
    vec![
        check("pendulum_double_well", equiv, 1e-6, "sup |phi'/(2g) - rho12|, t <= 20"),
        check("classical_energy", drift, 1e-8, "relative energy drift, t <= 20"),
    ]
}

fn gp_checks() -> Vec<CheckResult> {
    let run = || -> bhlab::Result<(f64, f64)> {
        let params = build_two_site_params(1.0, 1.8, 100)?;
        let w0 = GPState::new(vec![C64::new(1.0, 0.0), C64::new(0.0, 0.0)]);
        let grid = TimeGrid::with_steps(50.0, 100_000)?;
        let a = gp::integrate_gp_states(&params, DriftMode::Coherent, &w0, &grid)?;
        let b = gp::integrate_gp_states(&params, DriftMode::Number, &w0, &grid)?;
        let drift_eq =
            a.iter().zip(&b).flat_map(|(x, y)| x.w.iter().zip(&y.w).map(|(p, q)| (p - q).norm())).fold(0.0, f64::max);
        let e0 = gp::gp_energy(&params, 1.8, &w0.w);
        let energy = a.iter().map(|s| (gp::gp_energy(&params, 1.8, &s.w) - e0).abs()).fold(0.0, f64::max);
        Ok((drift_eq, energy / e0.abs().max(1.0)))
    };
    match run() {
        Ok((eq, en)) => vec![
            check("gp_drift_equivalence", eq, 1e-9, "sup |w_coherent - w_number|, t <= 50"),
            check("gp_energy", en, 1e-7, "relative energy drift, t <= 50"),
        ],
        Err(e) => vec![failed("gp_drift_equivalence", f64::INFINITY, 1e-9, e.to_string())],
    }
}

fn zero_d_check() -> CheckResult {
    let (n, eps, g) = (20.0f64, 2.0, 0.5);
    let u = g / n;
    let lambda = C64::new(n.sqrt(), 0.0);
    let t_end = 3.0 * std::f64::consts::PI / u;
    let mut worst: f64 = 0.0;
    for k in 0..=600 {
        let t = t_end * k as f64 / 600.0;
        match zero_d_truncated_sum(lambda, eps, u, t, 120) {
            Ok(s) => worst = worst.max((s - zero_d_closed_form(lambda, eps, u, t)).norm()),
            Err(e) => return failed("zero_d_series", f64::INFINITY, 1e-10, e.to_string()),
        }
    }
    check("zero_d_series", worst, 1e-10, "closed form vs truncated series, t <= 3 pi/u")
}

fn rotation_check() -> CheckResult {
    let (e, s, t) = (1.0, 0.7, 1.9);
    let d =
        girsanov::rotation_rt(e, s).mul(&girsanov::rotation_rt(e, t)).max_abs_diff(&girsanov::rotation_rt(e, s + t));
    check("rotation_semigroup", d, 1e-12, "R_s R_t - R_(s+t)")
}

fn fresnel_failure(name: &'static str, tol: f64, e: Error) -> CheckResult {
    match e {
        Error::QuadratureNotConverged { estimate, target } => {
            failed(name, estimate, target, format!("quadrature error estimate {estimate:.3e} above target {target:e}"))
        }
        other => failed(name, f64::INFINITY, tol, other.to_string()),
    }
}

fn fresnel_checks(opts: &VerifyOptions) -> Vec<CheckResult> {
    let with_tol = |mut s: FresnelKernelSpec| {
        if let Some(t) = opts.quadrature_tolerance {
            s.tolerance = t;
        }
        s
    };
    let mut out = Vec::new();

    let one_d = with_tol(FresnelKernelSpec::one_d(KernelSign::Forward));
    let mut worst: f64 = 0.0;
    let mut err = None;
    for lam in [C64::new(0.5, 0.0), C64::new(1.3, 0.0), C64::new(0.4, 0.3)] {
        match fresnel::fresnel_1d(lam, &one_d) {
            Ok(q) => worst = worst.max((q.value - fresnel::fresnel_1d_exact(lam, KernelSign::Forward)).norm()),
            Err(e) => {
                err = Some(e);
                break;
            }
        }
    }
    out.push(match err {
        Some(e) => fresnel_failure("fresnel_identity", 1e-6, e),
        None => check("fresnel_identity", worst, 1e-6, "|quadrature - exp(-i lambda^2/2)|"),
    });

    let step = TrotterStep0D { dt: 0.01, eps: 1.0, u: 1.0 };
    let mut worst: f64 = 0.0;
    let mut err = None;
    for n in 0..=4 {
        match fresnel::trotter_step_0d(n, &step, &one_d) {
            Ok(r) => worst = worst.max((r - 1.0).norm()),
            Err(e) => {
                err = Some(e);
                break;
            }
        }
    }
    out.push(match err {
        Some(e) => fresnel_failure("trotter_step", 1e-6, e),
        None => check("trotter_step", worst, 1e-6, "|ratio - 1|, n <= 4, u dt = 0.01"),
    });

    let two_d = with_tol(FresnelKernelSpec::two_d(KernelSign::Forward));
    let mut worst: f64 = 0.0;
    let mut err = None;
    for m in 1..=2 {
        match fresnel::martingale_check_0d(m, &step, &two_d) {
            Ok(v) => worst = worst.max((v - 1.0).norm()),
            Err(e) => {
                err = Some(e);
                break;
            }
        }
    }
    out.push(match err {
        Some(e) => fresnel_failure("martingale", 1e-5, e),
        None => check("martingale", worst, 1e-5, "|E[(U_x conj U_y)^m] - 1|, m <= 2"),
    });
    out
}

/// Run the invariant and identity battery.
pub fn verify_suite(opts: &VerifyOptions) -> VerifySummary {
    let mut checks = girsanov_checks(opts);
    checks.push(rotation_check());
    checks.extend(classical_checks());
    checks.extend(gp_checks());
    checks.push(zero_d_check());
    checks.extend(fresnel_checks(opts));
    let failed = checks.iter().filter(|c| !c.passed).count();
    VerifySummary { passed: failed == 0, total: checks.len(), failed, checks }
}
