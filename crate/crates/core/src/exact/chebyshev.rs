//! Chebyshev expansion of `exp(-i H t)` for large tridiagonal sectors.

use super::SectorHamiltonian;
use crate::C64;

/// Bessel functions `J_0(x) ..= J_kmax(x)` by Miller's backward recurrence,
/// normalized with `J_0 + 2 sum_k J_2k = 1`.
pub fn bessel_j_sequence(x: f64, kmax: usize) -> Vec<f64> {
    let mut out = vec![0.0; kmax + 1];
    if x == 0.0 {
        out[0] = 1.0;
        return out;
    }
    let ax = x.abs();
    let top = kmax.max(ax as usize);
    let start = top + 30 + (40.0 * top as f64).sqrt() as usize;
    let start = start + start % 2;
    let mut next = 0.0;
    let mut cur = 1e-300;
    let mut norm = 0.0;
    for k in (1..=start).rev() {
        let prev = 2.0 * k as f64 / ax * cur - next;
        next = cur;
        cur = prev;
        let idx = k - 1;
        if idx <= kmax {
            out[idx] = cur;
        }
        if idx % 2 == 0 && idx > 0 {
            norm += 2.0 * cur;
        }
        if cur.abs() > 1e250 {
            cur *= 1e-250;
            next *= 1e-250;
            norm *= 1e-250;
            for v in out.iter_mut().skip(idx) {
                *v *= 1e-250;
            }
        }
    }
    norm += cur;
    for (k, v) in out.iter_mut().enumerate() {
        *v /= norm;
        if x < 0.0 && k % 2 == 1 {
            *v = -*v;
        }
    }
    out
}

/// Propagates sector states with a Chebyshev series in the rescaled
/// Hamiltonian `(H - b) / a` whose spectrum lies inside `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct ChebyshevPropagator<'a> {
    h: &'a SectorHamiltonian,
    a: f64,
    b: f64,
}

impl<'a> ChebyshevPropagator<'a> {
    pub fn new(h: &'a SectorHamiltonian) -> Self {
        let (lo, hi) = h.spectral_bounds();
        let half = 0.5 * (hi - lo);
        let a = (half * (1.0 + 1e-10)).max(1e-300);
        Self { h, a, b: 0.5 * (hi + lo) }
    }

    /// Replace `psi` by `exp(-i H dt) psi`.
    pub fn step(&self, psi: &mut [C64], dt: f64) {
        if dt == 0.0 {
            return;
        }
        let n = psi.len();
        let x = self.a * dt;
        let kmax = (x.abs() + 10.0 * x.abs().cbrt() + 40.0) as usize;
        let jk = bessel_j_sequence(x, kmax);
        let last = jk
            .iter()
            .enumerate()
            .rev()
            .find(|(k, v)| v.abs() > 1e-18 || *k as f64 <= x.abs())
            .map(|(k, _)| k)
            .unwrap_or(0);

        let mut p_r: Vec<f64> = psi.iter().map(|z| z.re).collect();
        let mut p_i: Vec<f64> = psi.iter().map(|z| z.im).collect();
        let mut c_r = vec![0.0; n];
        let mut c_i = vec![0.0; n];
        let mut n_r = vec![0.0; n];
        let mut n_i = vec![0.0; n];
        let mut acc = vec![C64::new(0.0, 0.0); n];

        for i in 0..n {
            acc[i] = C64::new(p_r[i], p_i[i]) * jk[0];
        }
        if last >= 1 {
            self.scaled_apply(&p_r, &p_i, &mut c_r, &mut c_i);
            let coef = C64::new(0.0, -2.0 * jk[1]);
            for i in 0..n {
                acc[i] += coef * C64::new(c_r[i], c_i[i]);
            }
        }
        let mut phase = C64::new(0.0, -1.0);
        for k in 2..=last {
            self.scaled_apply(&c_r, &c_i, &mut n_r, &mut n_i);
            for i in 0..n {
                n_r[i] = 2.0 * n_r[i] - p_r[i];
                n_i[i] = 2.0 * n_i[i] - p_i[i];
            }
            phase *= C64::new(0.0, -1.0);
            let coef = phase * (2.0 * jk[k]);
            for i in 0..n {
                acc[i] += coef * C64::new(n_r[i], n_i[i]);
            }
            std::mem::swap(&mut p_r, &mut c_r);
            std::mem::swap(&mut p_i, &mut c_i);
            std::mem::swap(&mut c_r, &mut n_r);
            std::mem::swap(&mut c_i, &mut n_i);
        }
        let shift = C64::from_polar(1.0, -self.b * dt);
        for (p, a) in psi.iter_mut().zip(acc) {
            *p = a * shift;
        }
    }

    fn scaled_apply(&self, xr: &[f64], xi: &[f64], outr: &mut [f64], outi: &mut [f64]) {
        self.h.apply_split(xr, xi, outr, outi);
        let inv = 1.0 / self.a;
        for i in 0..xr.len() {
            outr[i] = (outr[i] - self.b * xr[i]) * inv;
            outi[i] = (outi[i] - self.b * xi[i]) * inv;
        }
    }
}
