//! Exact exterior calculus over rational-function coefficients.
//!
//! Everything in this crate computes symbolically and exactly: scalars are
//! quotients of multivariate polynomials over arbitrary-precision rationals,
//! differential forms carry those scalars as components, and every identity
//! checked by the test suite holds with zero tolerance — equalities are
//! decided by polynomial cross-multiplication, never by floating-point
//! comparison or by canonical forms that depend on GCD cancellation.

pub mod calculus;
pub mod ehresmann;
pub mod error;
pub mod forms;
pub mod lorentz;
pub mod maxwell;
pub mod observer;
pub mod ratfunc;

pub use calculus::{
    contract_vf, d, derivation_is_zero, fn_bracket_endo, fn_bracket_vf, increasing_tuples,
    lie_bracket, lie_derivative, lie_derivative_vf, nijenhuis_torsion, superbracket,
    torsion_closed_form_contract, torsion_closed_form_lie, DerivationOp, VectorForm,
};
pub use ehresmann::{BundleChart, ConnectionField, SectionGraph};
pub use error::{Error, Result};
pub use forms::{Chart, KForm, VectorField};
pub use lorentz::{double_star_sign, form_basis, Minkowski};
pub use maxwell::{
    constitutive_applicable, constitutive_residuals, continuity_residual, continuity_residual_for,
    curvature_contraction, d3, dot, maxwell_residuals, potential_residuals, split_equation,
    torque_contraction, EMScenario, SplitReport,
};
pub use observer::{observer_from_t, EMFields, Observer};
pub use ratfunc::{poly_gcd, rat, rat_int, Polynomial, Rational, ScalarField, Vars};
