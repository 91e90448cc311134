//! Exact quantum evolution in fixed-particle-number sectors.
//!
//! Two-site observables are reported per particle:
//!
//! * `rho1 = <n1> / N`
//! * `n12_over_N = (<n1> - <n2>) / N`
//! * `q = <a2^+ a1> / N`, which tends to `w1 conj(w2)` for the mean-field
//!   amplitudes `w`
//! * `norm`, the squared norm of the propagated state
//!
//! Brackets are the usual quantum-mechanical expectation values.

mod chebyshev;
mod propagate;
mod sector;
mod tridiag;
mod zero_d;

pub use chebyshev::{bessel_j_sequence, ChebyshevPropagator};
pub use propagate::{propagate_sector, PropagatorKind, DENSE_MAX_DIM};
pub use sector::{build_sector_hamiltonian, FockSector, SectorHamiltonian};
pub use tridiag::TridiagEigen;
pub use zero_d::{zero_d_closed_form, zero_d_truncated_sum, SERIES_TAIL_LIMIT};

use rayon::prelude::*;

use crate::{validate_state, Error, InitialState, ModelParams, Result, TimeGrid, TrajectorySeries, C64};

/// Largest Poisson weight that a coherent-state sector window may discard.
pub const POISSON_DISCARD_LIMIT: f64 = 1e-12;

/// Options shared by the exact evolution routines.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct EdOptions {
    pub propagator: PropagatorKind,
    /// Half-width of the particle-number window around the coherent mean.
    /// `None` picks the smallest window meeting [`POISSON_DISCARD_LIMIT`].
    pub sector_half_width: Option<u64>,
}

/// One-body density matrix of a two-site state, ordinary bracket convention.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OneBodyDensity {
    pub n1: f64,
    pub n2: f64,
    /// `<a1^+ a2>`
    pub a1dag_a2: C64,
    /// `<a2^+ a1>`
    pub a2dag_a1: C64,
    pub norm: f64,
}

impl OneBodyDensity {
    /// Density of sector amplitudes `c[n]` on `|n, N - n>`.
    pub fn of_sector_state(c: &[C64]) -> Self {
        let big_n = (c.len() - 1) as f64;
        let mut out = OneBodyDensity::zero();
        for (n, z) in c.iter().enumerate() {
            let p = z.norm_sqr();
            let a = n as f64;
            out.norm += p;
            out.n1 += p * a;
            out.n2 += p * (big_n - a);
            if n >= 1 {
                out.a2dag_a1 += c[n - 1].conj() * z * (a * (big_n - a + 1.0)).sqrt();
            }
            if n + 1 < c.len() {
                out.a1dag_a2 += c[n + 1].conj() * z * ((a + 1.0) * (big_n - a)).sqrt();
            }
        }
        out
    }

    fn zero() -> Self {
        Self { n1: 0.0, n2: 0.0, a1dag_a2: C64::new(0.0, 0.0), a2dag_a1: C64::new(0.0, 0.0), norm: 0.0 }
    }

    fn scaled_add(&mut self, other: &Self, w: f64) {
        self.n1 += w * other.n1;
        self.n2 += w * other.n2;
        self.a1dag_a2 += other.a1dag_a2 * w;
        self.a2dag_a1 += other.a2dag_a1 * w;
        self.norm += w * other.norm;
    }
}

/// `ln k!` from a direct sum for small `k` and Stirling's series otherwise.
pub fn ln_factorial(k: u64) -> f64 {
    if k < 32 {
        return (2..=k).map(|j| (j as f64).ln()).sum();
    }
    let x = k as f64;
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    x * x.ln() - x
        + 0.5 * (std::f64::consts::TAU * x).ln()
        + inv * (1.0 / 12.0 - inv2 * (1.0 / 360.0 - inv2 * (1.0 / 1260.0 - inv2 / 1680.0)))
}

/// Sector amplitudes of the normalized number state
/// `(lambda1 a1^+ + lambda2 a2^+)^N |0>` with `|lambda1|^2 + |lambda2|^2 = N`.
pub fn number_state_amplitudes(lambda: [C64; 2], n_total: u64) -> Vec<C64> {
    let big_n = n_total as f64;
    let scale = big_n.sqrt();
    let (w1, w2) = (lambda[0] / scale, lambda[1] / scale);
    let (r1, r2) = (w1.norm(), w2.norm());
    let (p1, p2) = (w1.arg(), w2.arg());
    let lnf_n = ln_factorial(n_total);
    (0..=n_total)
        .map(|n| {
            let m = n_total - n;
            if (r1 == 0.0 && n > 0) || (r2 == 0.0 && m > 0) {
                return C64::new(0.0, 0.0);
            }
            let mut ln_mag = 0.5 * (lnf_n - ln_factorial(n) - ln_factorial(m));
            if n > 0 {
                ln_mag += n as f64 * r1.ln();
            }
            if m > 0 {
                ln_mag += m as f64 * r2.ln();
            }
            C64::from_polar(ln_mag.exp(), n as f64 * p1 + m as f64 * p2)
        })
        .collect()
}

fn ln_poisson(mean: f64, k: u64) -> f64 {
    if mean == 0.0 {
        return if k == 0 { 0.0 } else { f64::NEG_INFINITY };
    }
    -mean + k as f64 * mean.ln() - ln_factorial(k)
}

/// Particle-number window `lo..=hi` for a coherent state of mean `mean`
/// together with the Poisson weights inside it and the discarded weight.
#[derive(Debug, Clone, PartialEq)]
pub struct PoissonWindow {
    pub lo: u64,
    pub hi: u64,
    pub weights: Vec<f64>,
    pub discarded: f64,
}

impl PoissonWindow {
    pub fn new(mean: f64, half_width: u64) -> Self {
        let centre = mean.round() as u64;
        let lo = centre.saturating_sub(half_width);
        let hi = centre + half_width;
        let weights = (lo..=hi).map(|k| ln_poisson(mean, k).exp()).collect();
        let mut discarded = 0.0;
        let mut k = hi + 1;
        loop {
            let p = ln_poisson(mean, k).exp();
            discarded += p;
            if k as f64 > mean && (p < 1e-18 * discarded || p < 1e-300) {
                break;
            }
            k += 1;
        }
        for k in (0..lo).rev() {
            let p = ln_poisson(mean, k).exp();
            discarded += p;
            if p < 1e-18 * discarded || p < 1e-300 {
                break;
            }
        }
        Self { lo, hi, weights, discarded }
    }

    /// Smallest window whose discarded weight is below [`POISSON_DISCARD_LIMIT`].
    pub fn automatic(mean: f64) -> Self {
        let mut w = (5.0 * mean.sqrt()) as u64 + 5;
        loop {
            let win = Self::new(mean, w);
            if win.discarded < POISSON_DISCARD_LIMIT {
                return win;
            }
            w += 1 + w / 20;
        }
    }

    fn for_options(mean: f64, opts: &EdOptions) -> Result<Self> {
        let win = match opts.sector_half_width {
            Some(w) => Self::new(mean, w),
            None => Self::automatic(mean),
        };
        if win.discarded >= POISSON_DISCARD_LIMIT {
            return Err(Error::TruncationTooSmall { discarded: win.discarded, limit: POISSON_DISCARD_LIMIT });
        }
        Ok(win)
    }
}

fn two_site_lambda(state: &InitialState) -> [C64; 2] {
    let l = state.lambda();
    [l[0], l[1]]
}

fn density_series(times: &[f64], dens: &[OneBodyDensity], n_ref: f64) -> Result<TrajectorySeries> {
    let mut s = TrajectorySeries::new(times.to_vec());
    s.push_real("rho1", dens.iter().map(|d| d.n1 / n_ref).collect())?;
    s.push_real("n12_over_N", dens.iter().map(|d| (d.n1 - d.n2) / n_ref).collect())?;
    s.push_complex("q", dens.iter().map(|d| d.a2dag_a1 / n_ref).collect())?;
    s.push_real("norm", dens.iter().map(|d| d.norm).collect())?;
    Ok(s)
}

/// One-body densities of an evolved two-site number state at arbitrary times.
pub fn number_state_densities(
    params: &ModelParams,
    state: &InitialState,
    times: &[f64],
    opts: &EdOptions,
) -> Result<Vec<OneBodyDensity>> {
    validate_state(state, params)?;
    let InitialState::Number { n_total, .. } = state else {
        return Err(Error::InvalidState("expected a number state".into()));
    };
    if params.sites() != 2 {
        return Err(Error::Unsupported("number-state evolution is implemented for two sites".into()));
    }
    let h = build_sector_hamiltonian(params, *n_total)?;
    let psi0 = number_state_amplitudes(two_site_lambda(state), *n_total);
    propagate_sector(&h, &psi0, times, opts.propagator, OneBodyDensity::of_sector_state)
}

/// Evolve a two-site number state and record `rho1`, `n12_over_N`, `q`, `norm`.
pub fn evolve_number_state(
    params: &ModelParams,
    state: &InitialState,
    grid: &TimeGrid,
    opts: &EdOptions,
) -> Result<TrajectorySeries> {
    let times = grid.times();
    let dens = number_state_densities(params, state, &times, opts)?;
    density_series(&times, &dens, state.mean_particles())
}

/// Evolve a coherent state as a Poisson mixture of number-state sectors.
///
/// Two sites: columns `rho1`, `n12_over_N`, `q`, `norm` normalized by the
/// mean particle number. One site: columns `a` (the conjugate of `<a>`,
/// matching [`zero_d_closed_form`]), `n_mean` and `norm`.
pub fn evolve_coherent_state(
    params: &ModelParams,
    state: &InitialState,
    grid: &TimeGrid,
    opts: &EdOptions,
) -> Result<TrajectorySeries> {
    validate_state(state, params)?;
    if !matches!(state, InitialState::Coherent { .. }) {
        return Err(Error::InvalidState("expected a coherent state".into()));
    }
    let times = grid.times();
    let mean = state.mean_particles();
    let win = PoissonWindow::for_options(mean, opts)?;
    match params.sites() {
        1 => zero_d_series(params, state.lambda()[0], &win, &times),
        2 => {
            let lambda = two_site_lambda(state);
            let per_sector: Vec<Vec<OneBodyDensity>> = (win.lo..=win.hi)
                .into_par_iter()
                .map(|n| -> Result<Vec<OneBodyDensity>> {
                    if n == 0 {
                        let vac = OneBodyDensity { norm: 1.0, ..OneBodyDensity::zero() };
                        return Ok(vec![vac; times.len()]);
                    }
                    let scale = (n as f64 / mean).sqrt();
                    let h = build_sector_hamiltonian(params, n)?;
                    let psi0 = number_state_amplitudes([lambda[0] * scale, lambda[1] * scale], n);
                    propagate_sector(&h, &psi0, &times, opts.propagator, OneBodyDensity::of_sector_state)
                })
                .collect::<Result<_>>()?;
            let mut total = vec![OneBodyDensity::zero(); times.len()];
            for (sector, w) in per_sector.iter().zip(&win.weights) {
                for (acc, d) in total.iter_mut().zip(sector) {
                    acc.scaled_add(d, *w);
                }
            }
            density_series(&times, &total, mean)
        }
        s => Err(Error::Unsupported(format!("coherent-state evolution supports one or two sites, got {s}"))),
    }
}

fn zero_d_series(params: &ModelParams, lambda: C64, win: &PoissonWindow, times: &[f64]) -> Result<TrajectorySeries> {
    let eps = params.hopping().get(0, 0);
    let u = params.u();
    let phase0 = lambda.arg();
    let energy = |n: f64| eps * n + u * n * (n - 1.0);
    let mut a_col = Vec::with_capacity(times.len());
    let mut n_col = Vec::with_capacity(times.len());
    let mut norm_col = Vec::with_capacity(times.len());
    for &t in times {
        let amp: Vec<C64> = (win.lo..=win.hi)
            .zip(&win.weights)
            .map(|(n, w)| C64::from_polar(w.sqrt(), n as f64 * phase0 - energy(n as f64) * t))
            .collect();
        let mut a = C64::new(0.0, 0.0);
        let mut nm = 0.0;
        let mut norm = 0.0;
        for (k, c) in amp.iter().enumerate() {
            let n = (win.lo + k as u64) as f64;
            nm += c.norm_sqr() * n;
            norm += c.norm_sqr();
            if k + 1 < amp.len() {
                a += c.conj() * amp[k + 1] * (n + 1.0).sqrt();
            }
        }
        a_col.push(a.conj());
        n_col.push(nm);
        norm_col.push(norm);
    }
    let mut s = TrajectorySeries::new(times.to_vec());
    s.push_complex("a", a_col)?;
    s.push_real("n_mean", n_col)?;
    s.push_real("norm", norm_col)?;
    Ok(s)
}
