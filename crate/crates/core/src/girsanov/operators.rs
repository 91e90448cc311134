use super::poly::{VPolynomial, Var};
use crate::{Error, RealMatrix, Result, C64};

/// Quotient `numerator / (v . vbar)^denominator_power`.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalVPoly {
    pub numerator: VPolynomial,
    pub denominator_power: u32,
}

fn check_dims(f: &VPolynomial, eps: &RealMatrix) -> Result<()> {
    if eps.dim() != f.sites() {
        return Err(Error::Dimension(format!(
            "hopping matrix is {}x{} but the polynomial has {} sites",
            eps.dim(),
            eps.dim(),
            f.sites()
        )));
    }
    Ok(())
}

/// `L0 f = sum_ij eps_ij (v_i d/dv_j - vbar_i d/dvbar_j) f`.
///
/// The matrix is used as given; for asymmetric input `L0` no longer
/// annihilates `v . vbar`.
pub fn apply_l0(f: &VPolynomial, eps: &RealMatrix) -> Result<VPolynomial> {
    check_dims(f, eps)?;
    let s = f.sites();
    let mut out = VPolynomial::zero(s);
    for j in 0..s {
        let dv = f.derivative(Var::V(j));
        let dvb = f.derivative(Var::VBar(j));
        for i in 0..s {
            let e = eps.get(i, j);
            if e == 0.0 {
                continue;
            }
            let term = &dv.times_var(Var::V(i)) - &dvb.times_var(Var::VBar(i));
            out = &out + &term.scale(C64::new(e, 0.0));
        }
    }
    Ok(out)
}

/// `Lint f = u sum_j (v_j^2 d^2/dv_j^2 - vbar_j^2 d^2/dvbar_j^2) f`.
pub fn apply_lint(f: &VPolynomial, u: f64) -> VPolynomial {
    let s = f.sites();
    let mut out = VPolynomial::zero(s);
    for j in 0..s {
        let a = f.derivative(Var::V(j)).derivative(Var::V(j)).times_var(Var::V(j)).times_var(Var::V(j));
        let b = f.derivative(Var::VBar(j)).derivative(Var::VBar(j)).times_var(Var::VBar(j)).times_var(Var::VBar(j));
        out = &out + &(&a - &b);
    }
    out.scale(C64::new(u, 0.0))
}

/// The drift correction generated by `P = x^m`, `x = v . vbar`:
///
/// `LP f = 2 u m sum_j v_j vbar_j (v_j d/dv_j - vbar_j d/dvbar_j) f / (v . vbar)`.
pub fn apply_lp(f: &VPolynomial, u: f64, m: u32) -> RationalVPoly {
    let s = f.sites();
    let mut num = VPolynomial::zero(s);
    for j in 0..s {
        let euler = &f.euler(Var::V(j)) - &f.euler(Var::VBar(j));
        num = &num + &euler.times_var(Var::V(j)).times_var(Var::VBar(j));
    }
    RationalVPoly { numerator: num.scale(C64::new(2.0 * u * m as f64, 0.0)), denominator_power: 1 }
}

/// `(L0 + Lint) f`.
pub fn apply_generator(f: &VPolynomial, eps: &RealMatrix, u: f64) -> Result<VPolynomial> {
    Ok(&apply_l0(f, eps)? + &apply_lint(f, u))
}

/// Largest coefficient of
/// `(L0 + Lint)(P f) - P (L0 + Lint) f - P LP f` with `P = (v . vbar)^m`,
/// where `P LP f` is formed exactly as `(v . vbar)^(m-1)` times the numerator.
pub fn check_girsanov_identity(f: &VPolynomial, m: u32, eps: &RealMatrix, u: f64) -> Result<f64> {
    check_dims(f, eps)?;
    let x = VPolynomial::casimir(f.sites());
    let p = x.pow(m);
    let lhs = apply_generator(&(&p * f), eps, u)?;
    let mut rhs = &p * &apply_generator(f, eps, u)?;
    if m > 0 {
        let lp = apply_lp(f, u, m);
        let corr = &x.pow(m - lp.denominator_power) * &lp.numerator;
        rhs = &rhs + &corr;
    }
    Ok(lhs.max_abs_diff(&rhs))
}

/// Two-site quadratic variables `n1 = v1 vbar1`, `n2 = v2 vbar2`,
/// `q = v1 vbar2`, `qbar = vbar1 v2`, in that order.
pub fn two_site_quadratics() -> [VPolynomial; 4] {
    let v = |j| VPolynomial::var(2, Var::V(j));
    let vb = |j| VPolynomial::var(2, Var::VBar(j));
    [&v(0) * &vb(0), &v(1) * &vb(1), &v(0) * &vb(1), &vb(0) * &v(1)]
}
