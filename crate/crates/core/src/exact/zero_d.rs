//! Single-site dynamics from a coherent state.
//!
//! For `h = eps n + u n(n-1)` and a coherent state `|lambda>`, the quantity
//! `(psi_t, a psi_t)` in the antilinear-second-slot pairing (the complex
//! conjugate of the usual `<psi_t| a |psi_t>`) equals
//!
//! ```text
//! conj(lambda) exp(i eps t) exp(-(1 - exp(2 i u t)) |lambda|^2)
//! ```
//!
//! and the same value is the Poisson sum
//! `conj(lambda) e^{-|lambda|^2} sum_n e^{i t (eps + 2 u n)} |lambda|^{2n} / n!`.

use crate::{Error, Result, C64};

/// Largest tolerated bound on the omitted tail of [`zero_d_truncated_sum`].
pub const SERIES_TAIL_LIMIT: f64 = 1e-14;

/// Closed-form single-site evolution.
pub fn zero_d_closed_form(lambda: C64, eps: f64, u: f64, t: f64) -> C64 {
    let r2 = lambda.norm_sqr();
    let osc = C64::from_polar(1.0, 2.0 * u * t);
    lambda.conj() * C64::from_polar(1.0, eps * t) * (-(C64::new(1.0, 0.0) - osc) * r2).exp()
}

/// First `terms` terms of the Poisson series; fails if the omitted tail
/// may exceed [`SERIES_TAIL_LIMIT`].
pub fn zero_d_truncated_sum(lambda: C64, eps: f64, u: f64, t: f64, terms: usize) -> Result<C64> {
    let r2 = lambda.norm_sqr();
    let mut weight = (-r2).exp();
    let mut acc = C64::new(0.0, 0.0);
    for n in 0..terms {
        acc += C64::from_polar(weight, t * (eps + 2.0 * u * n as f64));
        weight *= r2 / (n + 1) as f64;
    }
    let tail = lambda.norm() * poisson_tail_bound(weight, r2, terms);
    if tail > SERIES_TAIL_LIMIT {
        return Err(Error::SeriesTail { tail, limit: SERIES_TAIL_LIMIT });
    }
    Ok(lambda.conj() * acc)
}

/// Bound on `sum_{n >= k} p_n` given the first omitted term `p_k`.
fn poisson_tail_bound(first: f64, mean: f64, k: usize) -> f64 {
    let ratio = mean / (k + 1) as f64;
    if ratio < 1.0 {
        first / (1.0 - ratio)
    } else {
        f64::INFINITY
    }
}
