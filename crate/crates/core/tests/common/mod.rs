#![allow(dead_code)]

use bhlab::girsanov::VPolynomial;
use bhlab::{RealMatrix, C64};
use rand::Rng;

pub fn sup_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

pub fn sup_diff_c(a: &[C64], b: &[C64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

pub fn random_complex<R: Rng>(rng: &mut R) -> C64 {
    C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

/// Random polynomial with `terms` monomials of total degree at most `max_degree`.
pub fn random_polynomial<R: Rng>(rng: &mut R, sites: usize, max_degree: u32, terms: usize) -> VPolynomial {
    let mut p = VPolynomial::zero(sites);
    for _ in 0..terms {
        let deg = rng.gen_range(0..=max_degree);
        let mut e = vec![0u32; 2 * sites];
        for _ in 0..deg {
            let k = rng.gen_range(0..2 * sites);
            e[k] += 1;
        }
        p.add_term(e, random_complex(rng));
    }
    p
}

pub fn random_symmetric<R: Rng>(rng: &mut R, n: usize) -> RealMatrix {
    let mut m = RealMatrix::zeros(n);
    for i in 0..n {
        for j in 0..=i {
            let v = rng.gen_range(-1.0..1.0);
            m.set(i, j, v);
            m.set(j, i, v);
        }
    }
    m
}

/// Complex 4x4 matrix exponential by scaling and squaring of a Taylor series.
pub fn expm4(a: [[C64; 4]; 4]) -> [[C64; 4]; 4] {
    let norm: f64 = a.iter().map(|r| r.iter().map(|z| z.norm()).sum::<f64>()).fold(0.0, f64::max);
    let mut s = 0;
    while norm / f64::powi(2.0, s) > 0.25 {
        s += 1;
    }
    let scale = f64::powi(2.0, -s);
    let mut m = a;
    for r in m.iter_mut() {
        for z in r.iter_mut() {
            *z *= scale;
        }
    }
    let mul = |x: &[[C64; 4]; 4], y: &[[C64; 4]; 4]| {
        let mut o = [[C64::new(0.0, 0.0); 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                o[i][j] = (0..4).map(|k| x[i][k] * y[k][j]).sum();
            }
        }
        o
    };
    let mut result = [[C64::new(0.0, 0.0); 4]; 4];
    let mut term = [[C64::new(0.0, 0.0); 4]; 4];
    for i in 0..4 {
        result[i][i] = C64::new(1.0, 0.0);
        term[i][i] = C64::new(1.0, 0.0);
    }
    for k in 1..30 {
        term = mul(&term, &m);
        for r in term.iter_mut() {
            for z in r.iter_mut() {
                *z /= k as f64;
            }
        }
        for i in 0..4 {
            for j in 0..4 {
                result[i][j] += term[i][j];
            }
        }
    }
    for _ in 0..s {
        result = mul(&result, &result);
    }
    result
}

/// Indices of interior local maxima of `v`.
pub fn local_maxima(v: &[f64]) -> Vec<usize> {
    (1..v.len().saturating_sub(1)).filter(|&i| v[i] >= v[i - 1] && v[i] >= v[i + 1] && v[i] > 0.0).collect()
}
