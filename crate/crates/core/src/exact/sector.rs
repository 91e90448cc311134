use crate::{Error, ModelParams, Result};

/// Fixed-particle-number sector of the two-site model.
///
/// Basis vectors are `|n, N - n>` with `n` (occupation of the first site)
/// running from `0` to `N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FockSector {
    pub n_total: u64,
}

impl FockSector {
    pub fn new(n_total: u64) -> Self {
        Self { n_total }
    }

    pub fn dim(&self) -> usize {
        self.n_total as usize + 1
    }

    /// Basis index of `|n1, N - n1>`.
    pub fn index(&self, n1: u64) -> Option<usize> {
        (n1 <= self.n_total).then_some(n1 as usize)
    }
}

/// Real symmetric tridiagonal Hamiltonian restricted to one sector.
///
/// `off_diagonal[k]` couples basis states `k` and `k + 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct SectorHamiltonian {
    pub sector: FockSector,
    pub diagonal: Vec<f64>,
    pub off_diagonal: Vec<f64>,
}

impl SectorHamiltonian {
    pub fn dim(&self) -> usize {
        self.diagonal.len()
    }

    /// Gershgorin enclosure `[lo, hi]` of the spectrum.
    pub fn spectral_bounds(&self) -> (f64, f64) {
        let n = self.dim();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let mut r = 0.0;
            if i > 0 {
                r += self.off_diagonal[i - 1].abs();
            }
            if i + 1 < n {
                r += self.off_diagonal[i].abs();
            }
            lo = lo.min(self.diagonal[i] - r);
            hi = hi.max(self.diagonal[i] + r);
        }
        (lo, hi)
    }

    /// `out = H x` for split real/imaginary vectors.
    pub fn apply_split(&self, xr: &[f64], xi: &[f64], outr: &mut [f64], outi: &mut [f64]) {
        let n = self.dim();
        let d = &self.diagonal;
        let e = &self.off_diagonal;
        for i in 0..n {
            let mut ar = d[i] * xr[i];
            let mut ai = d[i] * xi[i];
            if i > 0 {
                ar += e[i - 1] * xr[i - 1];
                ai += e[i - 1] * xi[i - 1];
            }
            if i + 1 < n {
                ar += e[i] * xr[i + 1];
                ai += e[i] * xi[i + 1];
            }
            outr[i] = ar;
            outi[i] = ai;
        }
    }
}

/// Tridiagonal matrix of the two-site Hamiltonian in the `N`-particle sector.
///
/// Diagonal: `eps_11 n + eps_22 (N - n) + u [n(n-1) + (N-n)(N-n-1)]`.
/// Off-diagonal between `n` and `n + 1`: `eps_12 sqrt((n+1)(N-n))`.
pub fn build_sector_hamiltonian(params: &ModelParams, n_total: u64) -> Result<SectorHamiltonian> {
    if params.sites() != 2 {
        return Err(Error::Unsupported(format!(
            "sector Hamiltonians are implemented for two sites, got {}",
            params.sites()
        )));
    }
    let h = params.hopping();
    let (e11, e22, e12) = (h.get(0, 0), h.get(1, 1), h.get(0, 1));
    let u = params.u();
    let big_n = n_total as f64;
    let diagonal = (0..=n_total)
        .map(|n| {
            let a = n as f64;
            let b = big_n - a;
            e11 * a + e22 * b + u * (a * (a - 1.0) + b * (b - 1.0))
        })
        .collect();
    let off_diagonal = (0..n_total)
        .map(|n| {
            let a = n as f64;
            e12 * ((a + 1.0) * (big_n - a)).sqrt()
        })
        .collect();
    Ok(SectorHamiltonian { sector: FockSector::new(n_total), diagonal, off_diagonal })
}
