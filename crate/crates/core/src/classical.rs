//! Pendulum and double-well reductions of the two-site GP equation.
//!
//! Writing `w1 = sqrt(rho1) e^{i theta1}`, `w2 = sqrt(1 - rho1) e^{i theta2}`
//! and starting with everything on site one, the relative phase obeys
//!
//! ```text
//! phi'' + 4 eps^2 sin(phi) = 0,   phi(0) = 0,   phi'(0) = 2 g
//! ```
//!
//! with `rho1 = (1 + phi' / (2 g)) / 2`. The population imbalance
//! `rho12 = rho1 - rho2 = phi' / (2 g)` satisfies
//!
//! ```text
//! rho12'' + (4 eps^2 - 2 g^2) rho12 + 2 g^2 rho12^3 = 0,   rho12(0) = 1,   rho12'(0) = 0
//! ```
//!
//! The imbalance oscillates through zero for `g < 2 |eps|` and stays
//! self-trapped above `sqrt(1 - 4 eps^2 / g^2)` for `g > 2 |eps|`.

use crate::{Error, Result, Rk4, TimeGrid, TrajectorySeries};

/// Band around `g = 2 |eps|` classified as critical.
pub const CRITICAL_TOL: f64 = 1e-12;

/// Phase-space point of the pendulum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PendulumState {
    pub phi: f64,
    pub phi_dot: f64,
}

impl PendulumState {
    /// Initial condition for a population starting on site one.
    pub fn initial(g: f64) -> Self {
        Self { phi: 0.0, phi_dot: 2.0 * g }
    }
}

/// Phase-space point of the double well.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WellState {
    pub rho12: f64,
    pub rho12_dot: f64,
}

impl WellState {
    pub fn initial() -> Self {
        Self { rho12: 1.0, rho12_dot: 0.0 }
    }
}

/// Qualitative behaviour of the population imbalance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    Oscillatory,
    Critical,
    SelfTrapped,
}

impl Regime {
    pub fn label(&self) -> &'static str {
        match self {
            Regime::Oscillatory => "oscillatory",
            Regime::Critical => "critical",
            Regime::SelfTrapped => "self-trapped",
        }
    }
}

/// Regime from the parameters alone.
pub fn classify_regime(eps: f64, g: f64) -> Regime {
    let threshold = 2.0 * eps.abs();
    if (g - threshold).abs() <= CRITICAL_TOL {
        Regime::Critical
    } else if g > threshold {
        Regime::SelfTrapped
    } else {
        Regime::Oscillatory
    }
}

/// `E = phi'^2 / 2 - 4 eps^2 cos(phi)`.
pub fn pendulum_energy(eps: f64, s: PendulumState) -> f64 {
    0.5 * s.phi_dot * s.phi_dot - 4.0 * eps * eps * s.phi.cos()
}

/// `E = rho'^2 / 2 + (2 eps^2 - g^2) rho^2 + g^2 rho^4 / 2`.
pub fn well_energy(eps: f64, g: f64, s: WellState) -> f64 {
    let r2 = s.rho12 * s.rho12;
    0.5 * s.rho12_dot * s.rho12_dot + (2.0 * eps * eps - g * g) * r2 + 0.5 * g * g * r2 * r2
}

/// `rho1 = (1 + phi' / (2 g)) / 2`; requires `g > 0`.
pub fn rho1_from_pendulum(g: f64, s: PendulumState) -> f64 {
    0.5 * (1.0 + s.phi_dot / (2.0 * g))
}

fn check(eps: f64, g: f64) -> Result<()> {
    if !eps.is_finite() || !g.is_finite() || !(g > 0.0) {
        return Err(Error::InvalidParams(format!("need finite eps and g > 0, got eps = {eps}, g = {g}")));
    }
    Ok(())
}

/// Pendulum trajectory sampled on `grid`.
pub fn pendulum_trajectory(eps: f64, g: f64, grid: &TimeGrid) -> Result<Vec<PendulumState>> {
    check(eps, g)?;
    let w2 = 4.0 * eps * eps;
    let mut rhs = |_t: f64, y: &[f64], d: &mut [f64]| {
        d[0] = y[1];
        d[1] = -w2 * y[0].sin();
    };
    let init = PendulumState::initial(g);
    let mut y = [init.phi, init.phi_dot];
    let mut rk = Rk4::new(2);
    let mut out = Vec::with_capacity(grid.len());
    out.push(init);
    for k in 0..grid.steps() {
        rk.step(&mut rhs, grid.time(k), &mut y, grid.dt());
        out.push(PendulumState { phi: y[0], phi_dot: y[1] });
    }
    Ok(out)
}

/// Double-well trajectory sampled on `grid`.
pub fn well_trajectory(eps: f64, g: f64, grid: &TimeGrid) -> Result<Vec<WellState>> {
    check(eps, g)?;
    let lin = 4.0 * eps * eps - 2.0 * g * g;
    let cub = 2.0 * g * g;
    let mut rhs = |_t: f64, y: &[f64], d: &mut [f64]| {
        d[0] = y[1];
        d[1] = -lin * y[0] - cub * y[0] * y[0] * y[0];
    };
    let init = WellState::initial();
    let mut y = [init.rho12, init.rho12_dot];
    let mut rk = Rk4::new(2);
    let mut out = Vec::with_capacity(grid.len());
    out.push(init);
    for k in 0..grid.steps() {
        rk.step(&mut rhs, grid.time(k), &mut y, grid.dt());
        out.push(WellState { rho12: y[0], rho12_dot: y[1] });
    }
    Ok(out)
}

/// Pendulum series with columns `phi`, `phi_dot`, `rho1`, `n12_over_N`, `energy`.
pub fn integrate_pendulum(eps: f64, g: f64, grid: &TimeGrid) -> Result<TrajectorySeries> {
    let traj = pendulum_trajectory(eps, g, grid)?;
    let mut s = TrajectorySeries::new(grid.times());
    s.push_real("phi", traj.iter().map(|p| p.phi).collect())?;
    s.push_real("phi_dot", traj.iter().map(|p| p.phi_dot).collect())?;
    s.push_real("rho1", traj.iter().map(|p| rho1_from_pendulum(g, *p)).collect())?;
    s.push_real("n12_over_N", traj.iter().map(|p| p.phi_dot / (2.0 * g)).collect())?;
    s.push_real("energy", traj.iter().map(|p| pendulum_energy(eps, *p)).collect())?;
    Ok(s)
}

/// Double-well series with columns `n12_over_N`, `rho12_dot`, `rho1`, `energy`.
pub fn integrate_double_well(eps: f64, g: f64, grid: &TimeGrid) -> Result<TrajectorySeries> {
    let traj = well_trajectory(eps, g, grid)?;
    let mut s = TrajectorySeries::new(grid.times());
    s.push_real("n12_over_N", traj.iter().map(|w| w.rho12).collect())?;
    s.push_real("rho12_dot", traj.iter().map(|w| w.rho12_dot).collect())?;
    s.push_real("rho1", traj.iter().map(|w| 0.5 * (1.0 + w.rho12)).collect())?;
    s.push_real("energy", traj.iter().map(|w| well_energy(eps, g, *w)).collect())?;
    Ok(s)
}

/// Regime read off a computed imbalance trajectory: oscillatory if it
/// changes sign, self-trapped otherwise.
pub fn regime_from_imbalance(rho12: &[f64]) -> Regime {
    if rho12.iter().any(|&r| r < 0.0) {
        Regime::Oscillatory
    } else {
        Regime::SelfTrapped
    }
}
