use crate::{Error, Result, C64};

/// Point `(n1, n2, q, qbar)` of the two-site quadratic variables.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadPoint {
    pub n1: C64,
    pub n2: C64,
    pub q: C64,
    pub qbar: C64,
}

impl QuadPoint {
    pub fn as_array(&self) -> [C64; 4] {
        [self.n1, self.n2, self.q, self.qbar]
    }

    pub fn from_array(x: [C64; 4]) -> Self {
        Self { n1: x[0], n2: x[1], q: x[2], qbar: x[3] }
    }

    /// Quadratic variables of amplitudes `(v1, v2)`.
    pub fn from_amplitudes(v1: C64, v2: C64) -> Self {
        Self { n1: v1 * v1.conj(), n2: v2 * v2.conj(), q: v1 * v2.conj(), qbar: v1.conj() * v2 }
    }
}

/// Complex 4x4 matrix acting on `(n1, n2, q, qbar)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RotationMatrix4(pub [[C64; 4]; 4]);

impl RotationMatrix4 {
    pub fn identity() -> Self {
        let mut m = [[C64::new(0.0, 0.0); 4]; 4];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = C64::new(1.0, 0.0);
        }
        Self(m)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut m = [[C64::new(0.0, 0.0); 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                m[i][j] = (0..4).map(|k| self.0[i][k] * other.0[k][j]).sum();
            }
        }
        Self(m)
    }

    pub fn apply(&self, p: &QuadPoint) -> QuadPoint {
        let x = p.as_array();
        let mut y = [C64::new(0.0, 0.0); 4];
        for i in 0..4 {
            y[i] = (0..4).map(|k| self.0[i][k] * x[k]).sum();
        }
        QuadPoint::from_array(y)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut d: f64 = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                d = d.max((self.0[i][j] - other.0[i][j]).norm());
            }
        }
        d
    }

    pub fn scale(&self, c: C64) -> Self {
        let mut m = self.0;
        for row in m.iter_mut() {
            for z in row.iter_mut() {
                *z *= c;
            }
        }
        Self(m)
    }
}

/// Generator `A = -eps [[0, s], [s, 0]]` with `s = [[1, -1], [-1, 1]]`,
/// so that the hopping flow on quadratic variables is `exp(-i t A)`.
pub fn rotation_generator(eps: f64) -> RotationMatrix4 {
    let z = C64::new(0.0, 0.0);
    let a = C64::new(-eps, 0.0);
    RotationMatrix4([[z, z, a, -a], [z, z, -a, a], [a, -a, z, z], [-a, a, z, z]])
}

/// `R_t = exp(-i t A)` in closed form, with `c = cos(eps t)`, `s = sin(eps t)`.
pub fn rotation_rt(eps: f64, t: f64) -> RotationMatrix4 {
    let (s, c) = (eps * t).sin_cos();
    let c2 = C64::new(c * c, 0.0);
    let s2 = C64::new(s * s, 0.0);
    let isc = C64::new(0.0, s * c);
    RotationMatrix4([[c2, s2, isc, -isc], [s2, c2, -isc, isc], [isc, -isc, c2, s2], [-isc, isc, s2, c2]])
}

/// Weight `P` entering the interaction flow.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PMode {
    /// `P(x) = e^x`.
    Coherent,
    /// `P(x) = x^(N-1)`.
    Number { n_total: u64 },
}

/// Result of the interaction flow on a monomial `G(n1, n2) q^b qbar^bbar`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpLuResult {
    /// Arguments at which `G` is evaluated.
    pub n1: C64,
    pub n2: C64,
    /// `P(n1' + n2') / P(n1 + n2)`.
    pub multiplier: C64,
}

/// Interaction flow `exp(-i t Lu)` on `G(n1, n2) q^b qbar^bbar`:
/// `n1 -> e^{-2iut(b - bbar)} n1`, `n2 -> e^{+2iut(b - bbar)} n2`, times
/// `P(n1' + n2') / P(n1 + n2)`.
pub fn apply_exp_lu(point: &QuadPoint, b: u32, bbar: u32, u: f64, t: f64, mode: PMode) -> Result<ExpLuResult> {
    let k = b as f64 - bbar as f64;
    let n1 = point.n1 * C64::from_polar(1.0, -2.0 * u * t * k);
    let n2 = point.n2 * C64::from_polar(1.0, 2.0 * u * t * k);
    let before = point.n1 + point.n2;
    let after = n1 + n2;
    let multiplier = match mode {
        PMode::Coherent => (after - before).exp(),
        PMode::Number { n_total } => {
            if n_total == 0 {
                return Err(Error::InvalidParams("number weight needs N >= 1".into()));
            }
            if before.norm() == 0.0 {
                return Err(Error::InvalidState("n1 + n2 vanishes; the number weight is singular".into()));
            }
            (after / before).powu((n_total - 1) as u32)
        }
    };
    Ok(ExpLuResult { n1, n2, multiplier })
}

/// Value of `exp(-i t Lu)` applied to `G(n1, n2) q^b qbar^bbar` at `point`.
pub fn exp_lu_action<G>(g: G, point: &QuadPoint, b: u32, bbar: u32, u: f64, t: f64, mode: PMode) -> Result<C64>
where
    G: Fn(C64, C64) -> C64,
{
    let r = apply_exp_lu(point, b, bbar, u, t, mode)?;
    Ok(g(r.n1, r.n2) * r.multiplier * point.q.powu(b) * point.qbar.powu(bbar))
}

/// `<n_j q> / (<n_j> <q>)` under the interaction flow: `e^{-2iut}` for the
/// first site and `e^{+2iut}` for the second.
pub fn factorization_ratio(site: usize, u: f64, t: f64) -> Result<C64> {
    match site {
        0 => Ok(C64::from_polar(1.0, -2.0 * u * t)),
        1 => Ok(C64::from_polar(1.0, 2.0 * u * t)),
        _ => Err(Error::InvalidParams(format!("site must be 0 or 1, got {site}"))),
    }
}
