//! Model parameters, initial states, time grids and trajectory containers.
//!
//! The lattice Hamiltonian is
//!
//! ```text
//! h = sum_ij eps_ij a_i^+ a_j + u sum_j n_j (n_j - 1)
//! ```
//!
//! with `u = U/2` and the mean-field coupling `g = u N`. For the two-site
//! model the hopping matrix is `[[0, eps], [eps, 0]]`, so a physical
//! tunnelling amplitude `J` corresponds to `eps = -J`.

use crate::{Error, Result, C64};

/// Tolerance used when checking that a hopping matrix is symmetric.
pub const SYMMETRY_TOL: f64 = 1e-12;
/// Relative tolerance for the number-state normalization `sum |lambda|^2 = N`.
pub const NORMALIZATION_TOL: f64 = 1e-12;

/// A small dense real square matrix stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct RealMatrix {
    n: usize,
    data: Vec<f64>,
}

impl RealMatrix {
    pub fn zeros(n: usize) -> Self {
        Self { n, data: vec![0.0; n * n] }
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Dimension(format!(
                "hopping matrix must be square, got {} rows with lengths {:?}",
                n,
                rows.iter().map(Vec::len).collect::<Vec<_>>()
            )));
        }
        Ok(Self { n, data: rows.iter().flatten().copied().collect() })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        self.data[i * self.n + j] = value;
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.data.chunks(self.n.max(1)).map(<[f64]>::to_vec).collect()
    }

    /// Largest `|m_ij - m_ji|`.
    pub fn asymmetry(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.n {
            for j in 0..i {
                worst = worst.max((self.get(i, j) - self.get(j, i)).abs());
            }
        }
        worst
    }

    /// Matrix-vector product with a complex vector.
    pub fn apply(&self, v: &[C64]) -> Vec<C64> {
        (0..self.n).map(|i| (0..self.n).map(|j| v[j] * self.get(i, j)).sum()).collect()
    }
}

/// Parameters of the Bose-Hubbard Hamiltonian.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelParams {
    hopping: RealMatrix,
    u: f64,
    n_total: Option<u64>,
}

impl ModelParams {
    /// General lattice with an explicit hopping matrix and on-site interaction `u`.
    pub fn new(hopping: RealMatrix, u: f64) -> Result<Self> {
        let params = Self { hopping, u, n_total: None };
        params.validate()?;
        Ok(params)
    }

    /// General lattice parametrized by the mean-field coupling `g = u N`.
    pub fn with_coupling(hopping: RealMatrix, g: f64, n_total: u64) -> Result<Self> {
        if n_total == 0 {
            return Err(Error::InvalidParams("particle number must be positive".into()));
        }
        if !g.is_finite() || g < 0.0 {
            return Err(Error::InvalidParams(format!("coupling g must be finite and non-negative, got {g}")));
        }
        let params = Self { hopping, u: g / n_total as f64, n_total: Some(n_total) };
        params.validate()?;
        Ok(params)
    }

    /// Single-site model with on-site energy `eps` and interaction `u`.
    pub fn zero_d(eps: f64, u: f64) -> Result<Self> {
        let mut h = RealMatrix::zeros(1);
        h.set(0, 0, eps);
        Self::new(h, u)
    }

    /// Attach a particle number to parameters built from `u` directly.
    pub fn with_n_total(mut self, n_total: u64) -> Result<Self> {
        if n_total == 0 {
            return Err(Error::InvalidParams("particle number must be positive".into()));
        }
        self.n_total = Some(n_total);
        Ok(self)
    }

    fn validate(&self) -> Result<()> {
        if self.hopping.dim() == 0 {
            return Err(Error::InvalidParams("at least one site is required".into()));
        }
        if self.hopping.data.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidParams("hopping matrix has non-finite entries".into()));
        }
        let asym = self.hopping.asymmetry();
        if asym > SYMMETRY_TOL {
            return Err(Error::InvalidParams(format!(
                "hopping matrix is not symmetric (max |eps_ij - eps_ji| = {asym:e})"
            )));
        }
        if !self.u.is_finite() || self.u < 0.0 {
            return Err(Error::InvalidParams(format!("interaction u must be finite and non-negative, got {}", self.u)));
        }
        Ok(())
    }

    pub fn sites(&self) -> usize {
        self.hopping.dim()
    }

    pub fn hopping(&self) -> &RealMatrix {
        &self.hopping
    }

    pub fn u(&self) -> f64 {
        self.u
    }

    pub fn n_total(&self) -> Option<u64> {
        self.n_total
    }

    /// `g = u N` when a particle number is attached.
    pub fn g(&self) -> Option<f64> {
        self.n_total.map(|n| self.u * n as f64)
    }

    /// Off-diagonal hopping of a two-site model.
    pub fn two_site_eps(&self) -> Result<f64> {
        if self.sites() != 2 {
            return Err(Error::Unsupported(format!("expected a two-site model, got {} sites", self.sites())));
        }
        Ok(self.hopping.get(0, 1))
    }
}

/// Two-site parameters with hopping `[[0, eps], [eps, 0]]` and `u = g / N`.
pub fn build_two_site_params(eps: f64, g: f64, n_total: u64) -> Result<ModelParams> {
    if !eps.is_finite() {
        return Err(Error::InvalidParams(format!("eps must be finite, got {eps}")));
    }
    let hopping = RealMatrix::from_rows(&[vec![0.0, eps], vec![eps, 0.0]])?;
    ModelParams::with_coupling(hopping, g, n_total)
}

/// Initial many-body state.
#[derive(Debug, Clone, PartialEq)]
pub enum InitialState {
    /// `(lambda . a^+)^N |0>` normalized, requiring `sum |lambda_i|^2 = N`.
    Number { lambda: Vec<C64>, n_total: u64 },
    /// Product of Glauber coherent states with mean occupation `sum |lambda_i|^2`.
    Coherent { lambda: Vec<C64> },
}

impl InitialState {
    /// All `n_total` particles on one site.
    pub fn number_on_site(sites: usize, site: usize, n_total: u64) -> Self {
        let mut lambda = vec![C64::new(0.0, 0.0); sites];
        if site < sites {
            lambda[site] = C64::new((n_total as f64).sqrt(), 0.0);
        }
        InitialState::Number { lambda, n_total }
    }

    /// Number state along `direction`, rescaled so that `sum |lambda_i|^2 = N`.
    pub fn number_along(direction: &[C64], n_total: u64) -> Result<Self> {
        let norm2: f64 = direction.iter().map(|z| z.norm_sqr()).sum();
        if !(norm2 > 0.0) || !norm2.is_finite() {
            return Err(Error::InvalidState("direction vector must be non-zero and finite".into()));
        }
        let scale = (n_total as f64 / norm2).sqrt();
        Ok(InitialState::Number { lambda: direction.iter().map(|z| z * scale).collect(), n_total })
    }

    pub fn lambda(&self) -> &[C64] {
        match self {
            InitialState::Number { lambda, .. } | InitialState::Coherent { lambda } => lambda,
        }
    }

    /// Exact particle number for number states, mean particle number otherwise.
    pub fn mean_particles(&self) -> f64 {
        match self {
            InitialState::Number { n_total, .. } => *n_total as f64,
            InitialState::Coherent { lambda } => lambda.iter().map(|z| z.norm_sqr()).sum(),
        }
    }

    /// Normalized mean-field amplitudes `w = lambda / sqrt(sum |lambda|^2)`.
    pub fn mean_field_amplitudes(&self) -> Vec<C64> {
        let n = self.lambda().iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        self.lambda().iter().map(|z| if n > 0.0 { z / n } else { *z }).collect()
    }
}

/// Check that `state` is compatible with `params`.
pub fn validate_state(state: &InitialState, params: &ModelParams) -> Result<()> {
    let lambda = state.lambda();
    if lambda.len() != params.sites() {
        return Err(Error::InvalidState(format!(
            "state has {} amplitudes but the model has {} sites",
            lambda.len(),
            params.sites()
        )));
    }
    if lambda.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::InvalidState("amplitudes must be finite".into()));
    }
    let norm2: f64 = lambda.iter().map(|z| z.norm_sqr()).sum();
    match state {
        InitialState::Number { n_total, .. } => {
            if *n_total == 0 {
                return Err(Error::InvalidState("number state needs at least one particle".into()));
            }
            let n = *n_total as f64;
            if (norm2 - n).abs() > NORMALIZATION_TOL * n {
                return Err(Error::InvalidState(format!("sum |lambda|^2 = {norm2} differs from N = {n}")));
            }
            if let Some(pn) = params.n_total() {
                if pn != *n_total {
                    return Err(Error::InvalidState(format!(
                        "state has N = {n_total} but the model was built for N = {pn}"
                    )));
                }
            }
        }
        InitialState::Coherent { .. } => {
            if let Some(pn) = params.n_total() {
                let n = pn as f64;
                if (norm2 - n).abs() > NORMALIZATION_TOL * n {
                    return Err(Error::InvalidState(format!(
                        "coherent mean occupation {norm2} differs from the model's N = {n}"
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Uniform grid `t_k = k dt` for `k = 0..=steps`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid {
    t_max: f64,
    dt: f64,
    steps: usize,
}

impl TimeGrid {
    /// Grid with step `dt` covering `[0, t_max]`; the last point is the largest
    /// multiple of `dt` not exceeding `t_max` (up to rounding).
    pub fn new(t_max: f64, dt: f64) -> Result<Self> {
        if !(dt > 0.0) || !dt.is_finite() {
            return Err(Error::InvalidGrid(format!("dt must be positive and finite, got {dt}")));
        }
        if !(t_max >= 0.0) || !t_max.is_finite() {
            return Err(Error::InvalidGrid(format!("t_max must be non-negative and finite, got {t_max}")));
        }
        let steps = (t_max / dt + 1e-9).floor() as usize;
        Ok(Self { t_max, dt, steps })
    }

    /// Grid with exactly `steps` intervals ending at `t_max`.
    pub fn with_steps(t_max: f64, steps: usize) -> Result<Self> {
        if steps == 0 {
            return Err(Error::InvalidGrid("at least one step is required".into()));
        }
        let mut grid = Self::new(t_max, t_max / steps as f64)?;
        grid.steps = steps;
        Ok(grid)
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn t_max(&self) -> f64 {
        self.t_max
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn len(&self) -> usize {
        self.steps + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn time(&self, k: usize) -> f64 {
        k as f64 * self.dt
    }

    pub fn times(&self) -> Vec<f64> {
        (0..=self.steps).map(|k| self.time(k)).collect()
    }
}

/// One named observable column.
#[derive(Debug, Clone, PartialEq)]
pub enum Column {
    Real(Vec<f64>),
    Complex(Vec<C64>),
}

impl Column {
    pub fn len(&self) -> usize {
        match self {
            Column::Real(v) => v.len(),
            Column::Complex(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn decimate(&self, stride: usize) -> Column {
        match self {
            Column::Real(v) => Column::Real(v.iter().step_by(stride).copied().collect()),
            Column::Complex(v) => Column::Complex(v.iter().step_by(stride).copied().collect()),
        }
    }
}

/// Time series of named observables sharing one time axis.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct TrajectorySeries {
    times: Vec<f64>,
    columns: Vec<(String, Column)>,
}

impl TrajectorySeries {
    pub fn new(times: Vec<f64>) -> Self {
        Self { times, columns: Vec::new() }
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// Append a column; its length must match the time axis.
    pub fn push(&mut self, name: impl Into<String>, column: Column) -> Result<()> {
        let name = name.into();
        if column.len() != self.times.len() {
            return Err(Error::Dimension(format!(
                "column {name} has {} samples but the time axis has {}",
                column.len(),
                self.times.len()
            )));
        }
        if self.get(&name).is_some() {
            return Err(Error::Dimension(format!("duplicate column {name}")));
        }
        self.columns.push((name, column));
        Ok(())
    }

    pub fn push_real(&mut self, name: impl Into<String>, values: Vec<f64>) -> Result<()> {
        self.push(name, Column::Real(values))
    }

    pub fn push_complex(&mut self, name: impl Into<String>, values: Vec<C64>) -> Result<()> {
        self.push(name, Column::Complex(values))
    }

    pub fn columns(&self) -> impl Iterator<Item = (&str, &Column)> {
        self.columns.iter().map(|(n, c)| (n.as_str(), c))
    }

    pub fn names(&self) -> Vec<&str> {
        self.columns.iter().map(|(n, _)| n.as_str()).collect()
    }

    pub fn get(&self, name: &str) -> Option<&Column> {
        self.columns.iter().find(|(n, _)| n == name).map(|(_, c)| c)
    }

    pub fn real(&self, name: &str) -> Option<&[f64]> {
        match self.get(name)? {
            Column::Real(v) => Some(v),
            Column::Complex(_) => None,
        }
    }

    pub fn complex(&self, name: &str) -> Option<&[C64]> {
        match self.get(name)? {
            Column::Complex(v) => Some(v),
            Column::Real(_) => None,
        }
    }

    /// Keep every `stride`-th sample.
    pub fn decimate(&self, stride: usize) -> TrajectorySeries {
        let stride = stride.max(1);
        TrajectorySeries {
            times: self.times.iter().step_by(stride).copied().collect(),
            columns: self.columns.iter().map(|(n, c)| (n.clone(), c.decimate(stride))).collect(),
        }
    }

    /// Flat header with complex columns split into `name_re` and `name_im`.
    pub fn flat_header(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (name, col) in &self.columns {
            match col {
                Column::Real(_) => out.push(name.clone()),
                Column::Complex(_) => {
                    out.push(format!("{name}_re"));
                    out.push(format!("{name}_im"));
                }
            }
        }
        out
    }

    /// Flat row `k` matching [`TrajectorySeries::flat_header`].
    pub fn flat_row(&self, k: usize) -> Vec<f64> {
        let mut out = Vec::new();
        for (_, col) in &self.columns {
            match col {
                Column::Real(v) => out.push(v[k]),
                Column::Complex(v) => {
                    out.push(v[k].re);
                    out.push(v[k].im);
                }
            }
        }
        out
    }
}
