//! Polynomial generators behind the Girsanov transformation and the
//! two-site transfer identities.
//!
//! The hopping and interaction parts of the generator act on polynomials in
//! `v` and its formal conjugate `vbar`:
//!
//! ```text
//! L0   = sum_ij eps_ij (v_i d/dv_j - vbar_i d/dvbar_j)
//! Lint = u sum_j (v_j^2 d^2/dv_j^2 - vbar_j^2 d^2/dvbar_j^2)
//! ```
//!
//! Multiplying by a function `P(v . vbar)` commutes with `L0` and produces a
//! first-order drift correction from `Lint`. For `P = x^m`,
//!
//! ```text
//! (L0 + Lint)(P f) = P (L0 + Lint) f
//!                  + 2 u m (v . vbar)^(m-1) sum_j v_j vbar_j (v_j d/dv_j - vbar_j d/dvbar_j) f
//! ```
//!
//! For two sites the flows on the quadratic variables `(n1, n2, q, qbar)`
//! are a rotation `R_t` (hopping) and a phase twist with a `P` ratio
//! (interaction), see [`rotation_rt`] and [`apply_exp_lu`].

mod operators;
mod poly;
mod quad;

pub use operators::{
    apply_generator, apply_l0, apply_lint, apply_lp, check_girsanov_identity, two_site_quadratics, RationalVPoly,
};
pub use poly::{VPolynomial, Var};
pub use quad::{
    apply_exp_lu, exp_lu_action, factorization_ratio, rotation_generator, rotation_rt, ExpLuResult, PMode, QuadPoint,
    RotationMatrix4,
};
