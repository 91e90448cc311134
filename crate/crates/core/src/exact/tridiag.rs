//! Implicit QL iteration for real symmetric tridiagonal matrices.

use crate::{Error, Result};

const MAX_SWEEPS: usize = 60;

/// Eigen-decomposition `H = sum_j lambda_j v_j v_j^T` of a symmetric
/// tridiagonal matrix, eigenvalues ascending.
#[derive(Debug, Clone)]
pub struct TridiagEigen {
    pub values: Vec<f64>,
    /// Row `j` (length `dim`) holds the normalized eigenvector for `values[j]`.
    vectors: Vec<f64>,
    dim: usize,
}

impl TridiagEigen {
    /// Decompose the matrix with diagonal `d` and off-diagonal `e` (`e[k]`
    /// couples `k` and `k + 1`).
    pub fn new(d: &[f64], e: &[f64]) -> Result<Self> {
        let n = d.len();
        if n == 0 || e.len() + 1 != n {
            return Err(Error::Dimension(format!(
                "tridiagonal matrix needs len(e) = len(d) - 1, got {} and {}",
                d.len(),
                e.len()
            )));
        }
        let mut diag = d.to_vec();
        let mut off = e.to_vec();
        off.push(0.0);
        let mut z = vec![0.0; n * n];
        for i in 0..n {
            z[i * n + i] = 1.0;
        }
        ql_implicit(&mut diag, &mut off, &mut z, n)?;

        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| diag[a].total_cmp(&diag[b]));
        let values = order.iter().map(|&j| diag[j]).collect();
        let mut vectors = Vec::with_capacity(n * n);
        for &j in &order {
            vectors.extend_from_slice(&z[j * n..(j + 1) * n]);
        }
        Ok(Self { values, vectors, dim: n })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vector(&self, j: usize) -> &[f64] {
        &self.vectors[j * self.dim..(j + 1) * self.dim]
    }
}

/// Rotations are accumulated into the rows of `z`, so row `j` ends up as the
/// eigenvector belonging to `d[j]`.
fn ql_implicit(d: &mut [f64], e: &mut [f64], z: &mut [f64], n: usize) -> Result<()> {
    for l in 0..n {
        let mut sweeps = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            sweeps += 1;
            if sweeps > MAX_SWEEPS {
                return Err(Error::NoConvergence);
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut deflated = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                let (head, tail) = z.split_at_mut((i + 1) * n);
                let zi = &mut head[i * n..];
                let zi1 = &mut tail[..n];
                for (a, b) in zi.iter_mut().zip(zi1.iter_mut()) {
                    let f = *b;
                    *b = s * *a + c * f;
                    *a = c * *a - s * f;
                }
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}
