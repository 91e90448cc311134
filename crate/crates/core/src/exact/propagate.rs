use rayon::prelude::*;

use super::chebyshev::ChebyshevPropagator;
use super::tridiag::TridiagEigen;
use super::SectorHamiltonian;
use crate::{Result, C64};

/// Largest sector dimension propagated by dense diagonalization under
/// [`PropagatorKind::Auto`].
pub const DENSE_MAX_DIM: usize = 5001;

/// Choice of sector propagator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PropagatorKind {
    /// Dense below [`DENSE_MAX_DIM`], Chebyshev above.
    #[default]
    Auto,
    Dense,
    Chebyshev,
}

impl PropagatorKind {
    fn resolve(self, dim: usize) -> PropagatorKind {
        match self {
            PropagatorKind::Auto if dim <= DENSE_MAX_DIM => PropagatorKind::Dense,
            PropagatorKind::Auto => PropagatorKind::Chebyshev,
            other => other,
        }
    }
}

/// Evaluate `reduce(exp(-i H t_k) psi0)` at every requested time.
///
/// Times may be in any order and of either sign.
pub fn propagate_sector<T, F>(
    h: &SectorHamiltonian,
    psi0: &[C64],
    times: &[f64],
    kind: PropagatorKind,
    reduce: F,
) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(&[C64]) -> T + Sync,
{
    match kind.resolve(h.dim()) {
        PropagatorKind::Chebyshev => {
            let prop = ChebyshevPropagator::new(h);
            let mut psi = psi0.to_vec();
            let mut t_now = 0.0;
            let mut out = Vec::with_capacity(times.len());
            for &t in times {
                prop.step(&mut psi, t - t_now);
                t_now = t;
                out.push(reduce(&psi));
            }
            Ok(out)
        }
        _ => {
            let eig = TridiagEigen::new(&h.diagonal, &h.off_diagonal)?;
            let n = eig.dim();
            let coeff: Vec<C64> = (0..n).map(|j| eig.vector(j).iter().zip(psi0).map(|(v, p)| p * *v).sum()).collect();
            Ok(times
                .par_iter()
                .map(|&t| {
                    let mut re = vec![0.0; n];
                    let mut im = vec![0.0; n];
                    for j in 0..n {
                        let c = coeff[j] * C64::from_polar(1.0, -eig.values[j] * t);
                        if c.re == 0.0 && c.im == 0.0 {
                            continue;
                        }
                        for ((r, i), v) in re.iter_mut().zip(im.iter_mut()).zip(eig.vector(j)) {
                            *r += c.re * v;
                            *i += c.im * v;
                        }
                    }
                    let psi: Vec<C64> = re.into_iter().zip(im).map(|(r, i)| C64::new(r, i)).collect();
                    reduce(&psi)
                })
                .collect())
        }
    }
}
