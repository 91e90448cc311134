//! Discrete Gross-Pitaevskii dynamics.
//!
//! With normalized amplitudes `w` (`sum |w_j|^2 = 1`) the coherent-state
//! limit reads
//!
//! ```text
//! dw_j/dt = -i (eps w)_j - 2 i g |w_j|^2 w_j
//! ```
//!
//! and conserves both the norm and the energy
//! `E(w) = sum_ij eps_ij conj(w_i) w_j + g sum_j |w_j|^4`.
//! The number-state drift replaces `|w_j|^2` by `|w_j|^2 / sum_k |w_k|^2`,
//! which coincides with the coherent drift on the unit sphere.

use crate::{Error, InitialState, ModelParams, Result, Rk4, TimeGrid, TrajectorySeries, C64};

/// Largest tolerated deviation of `sum |w_j|^2` from its initial value.
pub const NORM_DRIFT_LIMIT: f64 = 1e-6;

/// Which nonlinearity drives the mean-field amplitudes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DriftMode {
    /// `2 g |w_j|^2 w_j`.
    Coherent,
    /// `2 g (|w_j|^2 / sum_k |w_k|^2) w_j`, the large-`N` number-state drift.
    Number,
    /// Number-state drift with the finite-size factor `(N - 1) / N`.
    NumberFiniteN { n_total: u64 },
}

/// Mean-field amplitudes of a lattice.
#[derive(Debug, Clone, PartialEq)]
pub struct GPState {
    pub w: Vec<C64>,
}

impl GPState {
    pub fn new(w: Vec<C64>) -> Self {
        Self { w }
    }

    /// Normalized amplitudes of an initial quantum state.
    pub fn from_initial(state: &InitialState) -> Self {
        Self { w: state.mean_field_amplitudes() }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.w.iter().map(|z| z.norm_sqr()).sum()
    }

    /// `rho_jk = w_j conj(w_k)`.
    pub fn density(&self, j: usize, k: usize) -> C64 {
        self.w[j] * self.w[k].conj()
    }
}

/// Drift of the GP equation, written into `out`.
pub fn gp_rhs(params: &ModelParams, mode: DriftMode, g: f64, w: &[C64], out: &mut [C64]) {
    let h = params.hopping();
    let n = w.len();
    let denom = match mode {
        DriftMode::Coherent => 1.0,
        DriftMode::Number | DriftMode::NumberFiniteN { .. } => w.iter().map(|z| z.norm_sqr()).sum(),
    };
    let factor = match mode {
        DriftMode::NumberFiniteN { n_total } => (n_total as f64 - 1.0) / n_total as f64,
        _ => 1.0,
    };
    let minus_i = C64::new(0.0, -1.0);
    for j in 0..n {
        let mut hop = C64::new(0.0, 0.0);
        for k in 0..n {
            hop += w[k] * h.get(j, k);
        }
        let nonlinear = w[j] * (2.0 * g * factor * w[j].norm_sqr() / denom);
        out[j] = minus_i * (hop + nonlinear);
    }
}

/// `E(w) = sum_ij eps_ij conj(w_i) w_j + g sum_j |w_j|^4`.
pub fn gp_energy(params: &ModelParams, g: f64, w: &[C64]) -> f64 {
    let h = params.hopping();
    let mut e = 0.0;
    for i in 0..w.len() {
        for j in 0..w.len() {
            e += (w[i].conj() * w[j]).re * h.get(i, j);
        }
        e += g * w[i].norm_sqr().powi(2);
    }
    e
}

fn coupling(params: &ModelParams) -> Result<f64> {
    params.g().ok_or_else(|| Error::InvalidParams("GP evolution needs g = u N; attach a particle number".into()))
}

fn check_mode(mode: DriftMode) -> Result<()> {
    if let DriftMode::NumberFiniteN { n_total } = mode {
        if n_total < 1 {
            return Err(Error::InvalidParams("finite-N drift needs N >= 1".into()));
        }
    }
    Ok(())
}

/// Integrate the GP equation with fixed-step RK4 on `grid`, returning the
/// amplitudes at every grid time.
pub fn integrate_gp_states(
    params: &ModelParams,
    mode: DriftMode,
    w0: &GPState,
    grid: &TimeGrid,
) -> Result<Vec<GPState>> {
    check_mode(mode)?;
    let g = coupling(params)?;
    if w0.w.len() != params.sites() {
        return Err(Error::Dimension(format!("GP state has {} amplitudes for {} sites", w0.w.len(), params.sites())));
    }
    let norm0 = w0.norm_sqr();
    if !(norm0 > 0.0) {
        return Err(Error::InvalidState("GP state must be non-zero".into()));
    }
    let dt = grid.dt();
    let mut rk = Rk4::new(w0.w.len());
    let mut w = w0.w.clone();
    let mut out = Vec::with_capacity(grid.len());
    out.push(w0.clone());
    let mut rhs = |_t: f64, y: &[C64], d: &mut [C64]| gp_rhs(params, mode, g, y, d);
    for k in 0..grid.steps() {
        let t = grid.time(k);
        rk.step(&mut rhs, t, &mut w, dt);
        let norm: f64 = w.iter().map(|z| z.norm_sqr()).sum();
        let drift = (norm - norm0).abs() / norm0;
        if !(drift <= NORM_DRIFT_LIMIT) {
            return Err(Error::NormDrift { drift, t: grid.time(k + 1), limit: NORM_DRIFT_LIMIT });
        }
        out.push(GPState::new(w.clone()));
    }
    Ok(out)
}

/// Integrate the GP equation and record `norm`, `energy` and, for two sites,
/// `rho1`, `n12_over_N` and `q = w1 conj(w2)`; for other lattices one
/// `rho{j}` column per site.
pub fn integrate_gp(params: &ModelParams, mode: DriftMode, w0: &GPState, grid: &TimeGrid) -> Result<TrajectorySeries> {
    let states = integrate_gp_states(params, mode, w0, grid)?;
    let g = coupling(params)?;
    let mut s = TrajectorySeries::new(grid.times());
    if params.sites() == 2 {
        s.push_real("rho1", states.iter().map(|st| st.w[0].norm_sqr()).collect())?;
        s.push_real("n12_over_N", states.iter().map(|st| st.w[0].norm_sqr() - st.w[1].norm_sqr()).collect())?;
        s.push_complex("q", states.iter().map(|st| st.density(0, 1)).collect())?;
    } else {
        for j in 0..params.sites() {
            s.push_real(format!("rho{}", j + 1), states.iter().map(|st| st.w[j].norm_sqr()).collect())?;
        }
    }
    s.push_real("norm", states.iter().map(GPState::norm_sqr).collect())?;
    s.push_real("energy", states.iter().map(|st| gp_energy(params, g, &st.w)).collect())?;
    Ok(s)
}
