//! Regulated quadrature against the Fresnel kernels
//! `dF(phi) = e^{i phi^2 / 2} dphi / sqrt(2 pi i)` and its conjugate
//! `dFbar(phi) = e^{-i phi^2 / 2} dphi / sqrt(-2 pi i)`.
//!
//! The oscillatory integral is damped by `e^{-eps phi^2 / 2}`, evaluated with
//! composite Gauss-Legendre quadrature for a geometric ladder of damping
//! strengths, and extrapolated to `eps = 0` by Neville's polynomial scheme.
//! The regulated values are analytic in `eps` for `|eps| < 1`, which is what
//! makes the extrapolation converge.
//!
//! The basic identity is
//!
//! ```text
//! ∫ e^{-i lambda phi} dF(phi) = e^{-i lambda^2 / 2}
//! ```
//!
//! For complex `lambda` the contour is moved to `Im phi = Im lambda`
//! (or `-Im lambda` for the conjugate kernel) so that the integrand stays
//! bounded along it.

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::{Error, Result, C64};

/// Orientation of the oscillatory Gaussian.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelSign {
    /// `e^{i phi^2 / 2} / sqrt(2 pi i)`.
    Forward,
    /// `e^{-i phi^2 / 2} / sqrt(-2 pi i)`.
    Conjugate,
}

impl KernelSign {
    fn sigma(self) -> f64 {
        match self {
            KernelSign::Forward => 1.0,
            KernelSign::Conjugate => -1.0,
        }
    }

    /// Kernel density at a (possibly complex) point.
    pub fn density(self, phi: C64) -> C64 {
        let s = self.sigma();
        let norm = C64::from_polar((2.0 * PI).sqrt(), s * PI / 4.0);
        (C64::new(0.0, 0.5 * s) * phi * phi).exp() / norm
    }
}

/// Discretization and extrapolation settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FresnelKernelSpec {
    pub sign: KernelSign,
    /// Largest damping strength of the ladder.
    pub damping_start: f64,
    /// Ratio between consecutive damping strengths.
    pub damping_ratio: f64,
    /// Number of ladder rungs used in the extrapolation.
    pub ladder_len: usize,
    /// Width of each Gauss-Legendre panel.
    pub panel_width: f64,
    /// Integration stops where the damping factor falls below `e^{-cutoff}`.
    pub cutoff: f64,
    /// Largest accepted extrapolation error estimate.
    pub tolerance: f64,
}

impl FresnelKernelSpec {
    /// Settings for one-dimensional integrals (error below `1e-8` for `|lambda| <= 3`).
    pub fn one_d(sign: KernelSign) -> Self {
        Self {
            sign,
            damping_start: 0.2,
            damping_ratio: 0.8,
            ladder_len: 10,
            panel_width: 0.5,
            cutoff: 33.0,
            tolerance: 1e-6,
        }
    }

    /// Cheaper settings for tensor-product integrals (error near `1e-8`).
    pub fn two_d(sign: KernelSign) -> Self {
        Self {
            sign,
            damping_start: 0.3,
            damping_ratio: 0.7,
            ladder_len: 8,
            panel_width: 0.5,
            cutoff: 25.0,
            tolerance: 1e-6,
        }
    }

    pub fn conjugate(mut self) -> Self {
        self.sign = match self.sign {
            KernelSign::Forward => KernelSign::Conjugate,
            KernelSign::Conjugate => KernelSign::Forward,
        };
        self
    }

    fn validate(&self) -> Result<()> {
        let ok = self.damping_start > 0.0
            && self.damping_start < 1.0
            && self.damping_ratio > 0.0
            && self.damping_ratio < 1.0
            && self.ladder_len >= 2
            && self.panel_width > 0.0
            && self.cutoff > 0.0;
        if !ok {
            return Err(Error::InvalidParams(format!("invalid Fresnel quadrature settings {self:?}")));
        }
        Ok(())
    }

    fn ladder(&self) -> Vec<f64> {
        (0..self.ladder_len).map(|k| self.damping_start * self.damping_ratio.powi(k as i32)).collect()
    }
}

/// Extrapolated value with an error estimate (difference between the
/// extrapolants with and without the weakest damping).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureEstimate {
    pub value: C64,
    pub error_estimate: f64,
}

const GL_NODES: [f64; 8] = [
    0.095_012_509_837_637_44,
    0.281_603_550_779_258_9,
    0.458_016_777_657_227_4,
    0.617_876_244_402_643_7,
    0.755_404_408_355_003,
    0.865_631_202_387_831_7,
    0.944_575_023_073_232_6,
    0.989_400_934_991_649_9,
];
const GL_WEIGHTS: [f64; 8] = [
    0.189_450_610_455_068_5,
    0.182_603_415_044_923_6,
    0.169_156_519_395_002_5,
    0.149_595_988_816_576_7,
    0.124_628_971_255_533_9,
    0.095_158_511_682_492_78,
    0.062_253_523_938_647_89,
    0.027_152_459_411_754_09,
];

/// Nodes `x` on the shifted contour `x + i shift` and weights that include
/// the kernel, the damping and the quadrature rule.
fn weighted_nodes(spec: &FresnelKernelSpec, eps: f64, shift: f64) -> Vec<(C64, C64)> {
    let half = (2.0 * spec.cutoff / eps).sqrt() + shift.abs();
    let panels = (2.0 * half / spec.panel_width).ceil() as usize;
    let h = 2.0 * half / panels as f64;
    let mut out = Vec::with_capacity(panels * 16);
    for p in 0..panels {
        let mid = -half + (p as f64 + 0.5) * h;
        for (x, w) in GL_NODES.iter().zip(GL_WEIGHTS.iter()) {
            for sgn in [-1.0, 1.0] {
                let phi = C64::new(mid + sgn * x * 0.5 * h, shift);
                let weight = spec.sign.density(phi) * (-0.5 * eps * phi * phi).exp() * (w * 0.5 * h);
                out.push((phi, weight));
            }
        }
    }
    out
}

/// Neville extrapolation of `(x_k, y_k)` to `x = 0`.
fn neville_at_zero(xs: &[f64], ys: &[C64]) -> C64 {
    let mut p = ys.to_vec();
    let n = xs.len();
    for m in 1..n {
        for i in 0..n - m {
            p[i] = (p[i + 1] * xs[i] - p[i] * xs[i + m]) / (xs[i] - xs[i + m]);
        }
    }
    p[0]
}

fn extrapolate(spec: &FresnelKernelSpec, ladder: &[f64], values: &[C64]) -> Result<QuadratureEstimate> {
    let all = neville_at_zero(ladder, values);
    let fewer = neville_at_zero(&ladder[..ladder.len() - 1], &values[..values.len() - 1]);
    let est = QuadratureEstimate { value: all, error_estimate: (all - fewer).norm() };
    if !(est.error_estimate <= spec.tolerance) {
        return Err(Error::QuadratureNotConverged { estimate: est.error_estimate, target: spec.tolerance });
    }
    Ok(est)
}

/// Damped integral `∫ f(phi) e^{-eps phi^2/2} dK(phi)` along `Im phi = shift`.
pub fn regulated_integral_1d<F>(f: &F, spec: &FresnelKernelSpec, eps: f64, shift: f64) -> C64
where
    F: Fn(C64) -> C64 + Sync,
{
    weighted_nodes(spec, eps, shift).par_iter().map(|(phi, w)| f(*phi) * w).sum()
}

/// `∫ f(phi) dK(phi)`, extrapolated to vanishing damping.
///
/// `f` must be entire and of at most Gaussian-sub-dominant growth along the
/// contour `Im phi = shift`.
pub fn fresnel_integral_1d<F>(f: F, spec: &FresnelKernelSpec, shift: f64) -> Result<QuadratureEstimate>
where
    F: Fn(C64) -> C64 + Sync,
{
    spec.validate()?;
    let ladder = spec.ladder();
    let values: Vec<C64> = ladder.iter().map(|&e| regulated_integral_1d(&f, spec, e, shift)).collect();
    extrapolate(spec, &ladder, &values)
}

/// `∫∫ f(x, y) dKx(x) dKy(y)` on the real axes with a common damping ladder
/// (taken from `spec_x`).
pub fn fresnel_integral_2d<F>(
    f: F,
    spec_x: &FresnelKernelSpec,
    spec_y: &FresnelKernelSpec,
) -> Result<QuadratureEstimate>
where
    F: Fn(C64, C64) -> C64 + Sync,
{
    spec_x.validate()?;
    spec_y.validate()?;
    let ladder = spec_x.ladder();
    let values: Vec<C64> = ladder
        .iter()
        .map(|&e| {
            let nx = weighted_nodes(spec_x, e, 0.0);
            let ny = weighted_nodes(spec_y, e, 0.0);
            nx.par_iter()
                .map(|(x, wx)| {
                    let inner: C64 = ny.iter().map(|(y, wy)| f(*x, *y) * wy).sum();
                    inner * wx
                })
                .sum()
        })
        .collect();
    extrapolate(spec_x, &ladder, &values)
}

/// `∫ e^{-i lambda phi} dK(phi)` with an automatic contour shift.
pub fn fresnel_1d(lambda: C64, spec: &FresnelKernelSpec) -> Result<QuadratureEstimate> {
    let shift = spec.sign.sigma() * lambda.im;
    fresnel_integral_1d(|phi| (C64::new(0.0, -1.0) * lambda * phi).exp(), spec, shift)
}

/// Exact value `e^{-i sigma lambda^2 / 2}` of [`fresnel_1d`], `sigma = ±1`.
pub fn fresnel_1d_exact(lambda: C64, sign: KernelSign) -> C64 {
    (C64::new(0.0, -0.5 * sign.sigma()) * lambda * lambda).exp()
}

/// Exact damped integral `e^{-lambda^2 / (2 (eps - i))} / sqrt(1 + i eps)`
/// for the forward kernel.
pub fn regulated_exact(lambda: C64, eps: f64) -> C64 {
    let a = C64::new(eps, -1.0);
    (-(lambda * lambda) / (a * 2.0)).exp() / C64::new(1.0, eps).sqrt()
}

/// One interaction-then-hopping step of the single-site model with step
/// `dt`, on-site energy `eps` and interaction `u`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrotterStep0D {
    pub dt: f64,
    pub eps: f64,
    pub u: f64,
}

impl TrotterStep0D {
    fn validate(&self) -> Result<()> {
        if !(self.dt > 0.0) || !(self.u >= 0.0) || !self.eps.is_finite() {
            return Err(Error::InvalidParams(format!("invalid Trotter step {self:?}")));
        }
        Ok(())
    }

    fn kick(&self) -> f64 {
        (2.0 * self.u * self.dt).sqrt()
    }

    /// Multiplier `U_phi = e^{-i dt eps} e^{-i (sqrt(2 u dt) phi - u dt)}`.
    pub fn multiplier(&self, phi: C64) -> C64 {
        (C64::new(0.0, -1.0) * (phi * self.kick() + self.dt * self.eps - self.u * self.dt)).exp()
    }

    /// Formal conjugate of [`TrotterStep0D::multiplier`], continued analytically.
    pub fn multiplier_conj(&self, phi: C64) -> C64 {
        (C64::new(0.0, 1.0) * (phi * self.kick() + self.dt * self.eps - self.u * self.dt)).exp()
    }

    /// Exact phase `e^{-i dt (eps n + u n (n - 1))}` acquired by `z^n`.
    pub fn exact_phase(&self, n: u32) -> C64 {
        let n = n as f64;
        C64::from_polar(1.0, -self.dt * (self.eps * n + self.u * n * (n - 1.0)))
    }
}

/// Ratio of `∫ U_phi^n dF(phi)` to the exact phase; equals one up to
/// quadrature error.
pub fn trotter_step_0d(n: u32, step: &TrotterStep0D, spec: &FresnelKernelSpec) -> Result<C64> {
    step.validate()?;
    if n > 8 {
        return Err(Error::InvalidParams(format!("monomial degree must be at most 8, got {n}")));
    }
    let q = fresnel_integral_1d(|phi| step.multiplier(phi).powu(n), spec, 0.0)?;
    Ok(q.value / step.exact_phase(n))
}

/// `∫∫ (U_x conj(U_y))^m dF(x) dFbar(y)`, which equals one.
pub fn martingale_check_0d(m: u32, step: &TrotterStep0D, spec: &FresnelKernelSpec) -> Result<C64> {
    step.validate()?;
    let fx = FresnelKernelSpec { sign: KernelSign::Forward, ..*spec };
    let fy = FresnelKernelSpec { sign: KernelSign::Conjugate, ..*spec };
    let q = fresnel_integral_2d(|x, y| (step.multiplier(x) * step.multiplier_conj(y)).powu(m), &fx, &fy)?;
    Ok(q.value)
}

/// Free Fresnel propagator `e^{i (x - y)^2 / (2t)} / sqrt(2 pi i t)`, `t > 0`.
pub fn fresnel_kernel(t: f64, x: f64, y: f64) -> C64 {
    let d = x - y;
    C64::from_polar(1.0, d * d / (2.0 * t)) / C64::from_polar((2.0 * PI * t).sqrt(), PI / 4.0)
}

/// `∫ q_t(x, y) q_s(y, z) dy` by Fresnel quadrature, to be compared with
/// `q_{t+s}(x, z)`.
pub fn kernel_composition(t: f64, s: f64, x: f64, z: f64, spec: &FresnelKernelSpec) -> Result<QuadratureEstimate> {
    if !(t > 0.0 && s > 0.0) {
        return Err(Error::InvalidParams("kernel times must be positive".into()));
    }
    let spec = FresnelKernelSpec { sign: KernelSign::Forward, ..*spec };
    let c = (t * s / (t + s)).sqrt();
    let b = x / t + z / s;
    let pre = c * C64::from_polar((2.0 * PI).sqrt(), PI / 4.0) / C64::from_polar(2.0 * PI * (t * s).sqrt(), PI / 2.0)
        * C64::from_polar(1.0, 0.5 * (x * x / t + z * z / s));
    let est = fresnel_1d(C64::new(c * b, 0.0), &spec)?;
    Ok(QuadratureEstimate { value: est.value * pre, error_estimate: est.error_estimate * pre.norm() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_legendre_integrates_polynomials() {
        let s: f64 = GL_WEIGHTS.iter().sum::<f64>() * 2.0;
        assert!((s - 2.0).abs() < 1e-14);
        let m4: f64 = GL_NODES.iter().zip(GL_WEIGHTS.iter()).map(|(x, w)| 2.0 * w * x.powi(30)).sum();
        assert!((m4 - 2.0 / 31.0).abs() < 1e-14);
    }

    #[test]
    fn regulated_integral_matches_closed_form() {
        let spec = FresnelKernelSpec::one_d(KernelSign::Forward);
        for lam in [C64::new(0.0, 0.0), C64::new(1.3, 0.0), C64::new(0.5, 0.7)] {
            let shift = lam.im;
            let v = regulated_integral_1d(&|phi: C64| (C64::new(0.0, -1.0) * lam * phi).exp(), &spec, 0.1, shift);
            assert!((v - regulated_exact(lam, 0.1)).norm() < 1e-12, "{lam}");
        }
    }

    #[test]
    fn neville_recovers_polynomial() {
        let xs = [0.5, 0.4, 0.3, 0.2];
        let ys: Vec<C64> = xs.iter().map(|x| C64::new(1.0 + 2.0 * x - x * x * x, *x)).collect();
        assert!((neville_at_zero(&xs, &ys) - C64::new(1.0, 0.0)).norm() < 1e-13);
    }

    #[test]
    fn kernels_are_normalized() {
        for sign in [KernelSign::Forward, KernelSign::Conjugate] {
            let v = fresnel_1d(C64::new(0.0, 0.0), &FresnelKernelSpec::one_d(sign)).unwrap();
            assert!((v.value - 1.0).norm() < 1e-9);
        }
    }

    #[test]
    fn high_degree_trotter_monomial_rejected() {
        let step = TrotterStep0D { dt: 0.01, eps: 1.0, u: 1.0 };
        assert!(trotter_step_0d(9, &step, &FresnelKernelSpec::one_d(KernelSign::Forward)).is_err());
    }
}
