//! Pinned residual thresholds for the verification suites.
//!
//! Every threshold used by `cargo test` and by `qeichler verify` lives here,
//! with its origin. The values are part of the contract, not tuning knobs.

/// |L_f(zeta_c^d; -m)| for m = 0..5: the twisted L-values vanish at the
/// non-positive integers; the residual is pure floating-point noise from
/// the reflection-formula quotient.
pub const VANISHING_MAX: f64 = 1e-7;

/// Functional-equation residual |Lambda_g(s) - Lambda_{g|W_N}(k-s)| on the
/// verification grid; both sides are computed by the split integral, so the
/// residual is bounded by the quadrature error.
pub const FUNCTIONAL_EQUATION_MAX: f64 = 1e-8;

/// Fitted decay exponents of the order-M remainders of the asymptotic
/// expansions must reach M - this slack on both half-planes.
pub const EXPANSION_EXPONENT_SLACK: f64 = 0.25;

/// Expansion order used by the Definition-2.3 agreement verification.
pub const EXPANSION_ORDER: usize = 4;

/// t-grid for the expansion verification.
pub const EXPANSION_T_GRID: [f64; 4] = [0.2, 0.1, 0.05, 0.025];

/// Quantum-modularity residual |Q(x) - chi(d) chi_{-4}(d) mu(gamma, x) Q(gamma x) - r_gamma(x)|.
pub const MODULARITY_RESIDUAL_MAX: f64 = 1e-6;

/// Two-route agreement of the non-holomorphic Eichler integral
/// (incomplete-Gamma series against ray quadrature).
pub const FSTAR_ROUTE_MAX: f64 = 1e-8;

/// Two-route agreement of the Mellin transform of e^t Gamma(k-1, 2t).
pub const MELLIN_TWO_ROUTE_MAX: f64 = 1e-9;

/// Regularized-beta identity residuals (values 1 and 0 on the two parameter
/// ladders).
pub const REG_BETA_IDENTITY_MAX: f64 = 1e-10;

/// Pfaff cross-check of the hypergeometric value at z = -1.
pub const PFAFF_CROSS_CHECK_MAX: f64 = 1e-10;

/// Agreement between the Mellin-route Q_f(d/c) and the radial-limit
/// extrapolation of the holomorphic Eichler integral.
pub const Q_TWO_ROUTE_MAX: f64 = 1e-5;

/// Strange-function values against the independent direct-product oracle.
pub const STRANGE_FUNCTION_MAX: f64 = 1e-12;

/// Slash-invariance residual of the fixtures under random Gamma_0(N)
/// elements (validates the theta-multiplier wiring).
pub const SLASH_INVARIANCE_MAX: f64 = 1e-9;

/// Maximum asymptotic-expansion order; conditioning grows factorially.
pub const MAX_EXPANSION_ORDER: usize = 12;

/// Scans exclude a ball of this radius around the cocycle singularity.
pub const SCAN_EXCLUSION_RADIUS: f64 = 1e-2;

/// Below this distance from the singularity the period-integral
/// conditioning is flagged.
pub const COCYCLE_PROXIMITY_WARNING: f64 = 1e-3;
