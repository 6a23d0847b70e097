//! Numerical engine for half-integral weight Eichler integrals, twisted
//! modular L-values with analytic continuation, and the quantum modular
//! forms they induce on the rationals.
//!
//! The crate is organized around the objects themselves:
//!
//! - [`arith`]: exact rationals, Kronecker symbol, eps_d, SL_2(Z) matrices,
//!   the half-integral weight automorphy factor, Dedekind sums.
//! - [`specfun`]: complex Gamma, incomplete Gamma, Gauss 2F1, incomplete and
//!   regularized beta, and the Mellin transform identities tying them together.
//! - [`forms`]: cusp-form descriptions (eta quotients, unary theta series,
//!   raw coefficient lists), certified q-expansions, evaluation anywhere in
//!   the upper half-plane, and the Fricke involution.
//! - [`lfunc`]: twisted L-values by Mellin integration of the form along
//!   vertical rays, completed L-functions, and the functional equation.
//! - [`eichler`]: the holomorphic Eichler integral on H, its non-holomorphic
//!   companion on the lower half-plane, and asymptotic expansions at rationals.
//! - [`quantum`]: values on Q, period-integral cocycles, modularity residuals,
//!   and the finite evaluation of Kontsevich's strange function at roots of
//!   unity.

pub mod arith;
pub mod eichler;
pub mod error;
pub mod forms;
pub mod lfunc;
pub mod quad;
pub mod quantum;
pub mod specfun;
pub mod tol;

pub use arith::{
    dedekind_sum, eps, in_gamma0, in_gamma1, kronecker, AutomorphyFactor, GroupElement,
    HalfInteger, ReducedRational,
};
pub use eichler::AsymptoticExpansion;
pub use error::{Error, Result};
pub use forms::{CuspFormSpec, FormKind, QExpansion, ReductionResult};
pub use lfunc::{CompletedLValue, LMethod, LValue};
pub use quantum::{CocycleReport, QuantumValue};
pub use specfun::Estimate;
