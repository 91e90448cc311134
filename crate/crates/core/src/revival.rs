//! Averaged two-site equations with collapse and revival.
//!
//! In particle units, with `n12 = <n1 - n2>` and `q = <a2^+ a1>`,
//!
//! ```text
//! n12' = -4 eps Im q
//! q'   = i eps n12 - i u a(t) n12 q - u N b(t) q
//! ```
//!
//! where the averaged coefficients are `a = 1 + cos 2ũt`, `b = sin 2ũt`.
//! Setting `ũ = 0` recovers the two-site GP system; `ũ = u` keeps the
//! leading quantum correction, whose damping produces the envelope
//! `exp(-(N/4)(1 - cos 2ut))`.
//!
//! The damping term is removed analytically before integrating: with
//! `E(t) = exp(-(uN/2) ∫ b)` the substitution `n12 = E m`, `q = E y` gives
//!
//! ```text
//! m' = -4 eps Im y + (uN b / 2) m
//! y' = i eps m - (uN b / 2) y - i u a E m y
//! ```
//!
//! which stays bounded through the collapse.

use crate::{Error, Result, Rk4, TimeGrid, TrajectorySeries, C64};

/// `|y| / N` beyond which integration is aborted as unstable.
pub const OVERFLOW_GUARD: f64 = 1e6;

/// Form of the time-dependent coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Averaging {
    /// `a = 1 + cos 2ũt`, `b = sin 2ũt`.
    #[default]
    Averaged,
    /// `a = 2 cos 2ũt`, `b = 2 sin 2ũt`; experimental, doubles the damping.
    PurePhase,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RevivalParams {
    pub eps: f64,
    pub u: f64,
    pub u_tilde: f64,
    pub n_total: u64,
    pub averaging: Averaging,
}

/// `(n12, q)` in particle units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RevivalState {
    pub n12: f64,
    pub q: C64,
}

impl RevivalState {
    pub fn initial(n_total: u64) -> Self {
        Self { n12: n_total as f64, q: C64::new(0.0, 0.0) }
    }
}

impl RevivalParams {
    /// Parameters with `u = g / N` and the quantum correction switched on.
    pub fn new(eps: f64, g: f64, n_total: u64) -> Result<Self> {
        if n_total == 0 {
            return Err(Error::InvalidParams("particle number must be positive".into()));
        }
        let u = g / n_total as f64;
        let p = Self { eps, u, u_tilde: u, n_total, averaging: Averaging::Averaged };
        p.validate()?;
        Ok(p)
    }

    /// Same parameters with `ũ = 0`, i.e. the mean-field system.
    pub fn mean_field(mut self) -> Self {
        self.u_tilde = 0.0;
        self
    }

    pub fn with_averaging(mut self, averaging: Averaging) -> Self {
        self.averaging = averaging;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !self.eps.is_finite() || !self.u.is_finite() || self.u < 0.0 {
            return Err(Error::InvalidParams(format!("need finite eps and u >= 0, got {} and {}", self.eps, self.u)));
        }
        if self.n_total == 0 {
            return Err(Error::InvalidParams("particle number must be positive".into()));
        }
        if self.u_tilde != 0.0 && self.u_tilde != self.u {
            return Err(Error::InvalidParams(format!("u_tilde must be 0 or u = {}, got {}", self.u, self.u_tilde)));
        }
        Ok(())
    }

    fn coefficients(&self, t: f64) -> (f64, f64) {
        let arg = 2.0 * self.u_tilde * t;
        match self.averaging {
            Averaging::Averaged => (1.0 + arg.cos(), arg.sin()),
            Averaging::PurePhase => (2.0 * arg.cos(), 2.0 * arg.sin()),
        }
    }

    /// `E(t) = exp(-(uN/2) ∫_0^t b)`.
    pub fn damping_factor(&self, t: f64) -> f64 {
        if self.u_tilde == 0.0 {
            return 1.0;
        }
        let amp = match self.averaging {
            Averaging::Averaged => 1.0,
            Averaging::PurePhase => 2.0,
        };
        let un = self.u * self.n_total as f64;
        (-(un * amp / (4.0 * self.u_tilde)) * (1.0 - (2.0 * self.u_tilde * t).cos())).exp()
    }
}

/// Right-hand side `(n12', q')` of the unscaled system.
pub fn revival_rhs(state: &RevivalState, params: &RevivalParams, t: f64) -> (f64, C64) {
    let (a, b) = params.coefficients(t);
    let i = C64::new(0.0, 1.0);
    let un = params.u * params.n_total as f64;
    let dn = -4.0 * params.eps * state.q.im;
    let dq = i * params.eps * state.n12 - i * (params.u * a * state.n12) * state.q - state.q * (un * b);
    (dn, dq)
}

/// `exp(-(N/4)(1 - cos 2ut))`.
pub fn collapse_envelope(n_total: u64, u: f64, t: f64) -> f64 {
    (-(n_total as f64 / 4.0) * (1.0 - (2.0 * u * t).cos())).exp()
}

/// `collapse_envelope(N, u, t) * N cos 2 eps t`.
pub fn approx_small_g_solution(n_total: u64, eps: f64, u: f64, t: f64) -> f64 {
    collapse_envelope(n_total, u, t) * n_total as f64 * (2.0 * eps * t).cos()
}

fn emit(grid: &TimeGrid, states: &[RevivalState], params: &RevivalParams) -> Result<TrajectorySeries> {
    let n = params.n_total as f64;
    let mut s = TrajectorySeries::new(grid.times());
    s.push_real("n12_over_N", states.iter().map(|st| st.n12 / n).collect())?;
    s.push_real("rho1", states.iter().map(|st| 0.5 * (1.0 + st.n12 / n)).collect())?;
    s.push_complex("q", states.iter().map(|st| st.q / n).collect())?;
    s.push_real("envelope", grid.times().iter().map(|&t| params.damping_factor(t)).collect())?;
    Ok(s)
}

/// Integrate from `n12 = N`, `q = 0` with RK4 in the damping-free variables.
///
/// Columns: `n12_over_N`, `rho1`, `q` (per particle) and `envelope`, the
/// factor `E(t)` that was separated off.
pub fn integrate_revival(params: &RevivalParams, grid: &TimeGrid) -> Result<TrajectorySeries> {
    params.validate()?;
    let p = *params;
    let un = p.u * p.n_total as f64;
    let guard = OVERFLOW_GUARD * p.n_total as f64;
    let mut rhs = |t: f64, y: &[C64], d: &mut [C64]| {
        let (a, b) = p.coefficients(t);
        let e = p.damping_factor(t);
        let m = y[0].re;
        let yy = y[1];
        let i = C64::new(0.0, 1.0);
        d[0] = C64::new(-4.0 * p.eps * yy.im + 0.5 * un * b * m, 0.0);
        d[1] = i * p.eps * m - yy * (0.5 * un * b) - i * (p.u * a * e * m) * yy;
    };
    let mut y = [C64::new(p.n_total as f64, 0.0), C64::new(0.0, 0.0)];
    let mut rk = Rk4::new(2);
    let mut states = Vec::with_capacity(grid.len());
    states.push(RevivalState::initial(p.n_total));
    for k in 0..grid.steps() {
        rk.step(&mut rhs, grid.time(k), &mut y, grid.dt());
        let t = grid.time(k + 1);
        if !(y[0].re.abs() <= guard && y[1].norm() <= guard) {
            return Err(Error::Overflow { t });
        }
        let e = p.damping_factor(t);
        states.push(RevivalState { n12: e * y[0].re, q: y[1] * e });
    }
    emit(grid, &states, &p)
}

/// Integrate the unscaled system directly; useful as a cross-check where
/// the damping stays moderate.
pub fn integrate_revival_raw(params: &RevivalParams, grid: &TimeGrid) -> Result<TrajectorySeries> {
    params.validate()?;
    let p = *params;
    let guard = OVERFLOW_GUARD * p.n_total as f64;
    let mut rhs = |t: f64, y: &[C64], d: &mut [C64]| {
        let st = RevivalState { n12: y[0].re, q: y[1] };
        let (dn, dq) = revival_rhs(&st, &p, t);
        d[0] = C64::new(dn, 0.0);
        d[1] = dq;
    };
    let mut y = [C64::new(p.n_total as f64, 0.0), C64::new(0.0, 0.0)];
    let mut rk = Rk4::new(2);
    let mut states = Vec::with_capacity(grid.len());
    states.push(RevivalState::initial(p.n_total));
    for k in 0..grid.steps() {
        rk.step(&mut rhs, grid.time(k), &mut y, grid.dt());
        if !(y[1].norm() <= guard) {
            return Err(Error::Overflow { t: grid.time(k + 1) });
        }
        states.push(RevivalState { n12: y[0].re, q: y[1] });
    }
    emit(grid, &states, &p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn initial_derivative() {
        let p = RevivalParams::new(1.3, 0.1, 50).unwrap();
        let (dn, dq) = revival_rhs(&RevivalState::initial(50), &p, 0.0);
        assert_eq!(dn, 0.0);
        assert!((dq - C64::new(0.0, 1.3 * 50.0)).norm() < 1e-12);
    }

    #[test]
    fn envelope_values() {
        let u = 0.002;
        assert_eq!(collapse_envelope(50, u, 0.0), 1.0);
        let half = std::f64::consts::PI / (2.0 * u);
        assert!((collapse_envelope(50, u, half) - (-25f64).exp()).abs() < 1e-20);
        assert!((collapse_envelope(50, u, 2.0 * half) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn damping_factor_matches_envelope() {
        let p = RevivalParams::new(1.0, 0.1, 50).unwrap();
        for t in [0.0, 10.0, 400.0, 1234.5] {
            assert!((p.damping_factor(t) - collapse_envelope(50, p.u, t)).abs() < 1e-14);
        }
        assert_eq!(p.mean_field().damping_factor(5.0), 1.0);
    }

    #[test]
    fn unsupported_u_tilde_rejected() {
        let mut p = RevivalParams::new(1.0, 0.1, 50).unwrap();
        p.u_tilde = 0.5 * p.u;
        assert!(p.validate().is_err());
    }

    #[test]
    fn stabilized_and_raw_agree() {
        let p = RevivalParams::new(1.0, 0.1, 50).unwrap();
        let grid = TimeGrid::new(60.0, 1e-3).unwrap();
        let a = integrate_revival(&p, &grid).unwrap();
        let b = integrate_revival_raw(&p, &grid).unwrap();
        let d = a
            .real("n12_over_N")
            .unwrap()
            .iter()
            .zip(b.real("n12_over_N").unwrap())
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max);
        assert!(d < 1e-9, "{d}");
    }
}
