//! Tolerance ladder used across the toolkit.
//!
//! Three regimes are kept deliberately separate so that floating-point
//! roundoff is never confused with a rank decision:
//!
//! * construction checks (orthonormalization, closure of an explicitly
//!   constructed basis) sit at 1e-12,
//! * algebraic identities that compose a few hundred rounded operations
//!   sit at 1e-10 (1e-9 for the aggregated identity suite),
//! * rank decisions (null spaces, eigenspace splits) use a cutoff of 1e-8,
//!   far above roundoff and far below any true singular value we encounter.

/// Exact constructions: Gram matrices of orthonormalized bases, bracket
/// closure of integer-entry matrix bases, metric compatibility.
pub const CONSTRUCTION: f64 = 1e-12;

/// Algebraic identities evaluated by tensor contraction.
pub const IDENTITY: f64 = 1e-10;

/// Aggregate identity-suite threshold (several contractions composed).
pub const SUITE: f64 = 1e-9;

/// Singular-value cutoff for rank decisions (null spaces, eigenspaces).
pub const RANK_CUTOFF: f64 = 1e-8;

/// Curvature-tensor symmetries and first Bianchi residuals.
pub const CURVATURE: f64 = 1e-9;

/// Einstein property: eigenvalue spread of the Ricci matrix.
pub const EINSTEIN: f64 = 1e-8;

/// Nonpositivity margin for sampled sectional curvatures.
pub const NONPOSITIVITY: f64 = 1e-6;

/// Relative tolerance on the Ricci cross-check after the curvature scale fit.
pub const FIT_RICCI_REL: f64 = 0.01;

/// Relative tolerance on scale-invariant curvature ratios from the survey.
pub const SURVEY_RATIO_REL: f64 = 0.02;

/// Agreement between the closed-form radial Hessian and the Riccati oracle.
pub const ORACLE: f64 = 1e-8;

/// Slack for the comparison-theorem bound r*lambda(r) >= 1.
pub const COMPARISON: f64 = 1e-9;

/// Slack for finite-difference verification of differential inequalities
/// and for the coercivity-constant lower bound.
pub const COERCIVITY_SLACK: f64 = 1e-6;

/// Dual-route equality of the stress-energy pairing.
pub const PAIRING: f64 = 1e-12;

/// Quadratic-form residuals that vanish by antisymmetry alone.
pub const ANTISYMMETRY_EXACT: f64 = 1e-12;

/// Condition-number guard for Gram matrices fed to orthonormalization.
pub const GRAM_CONDITION_MAX: f64 = 1e12;

/// Smallest constraint singular value certifying an empty solution space.
pub const HARMONIC_SV_MIN: f64 = 0.1;

/// Residual the negative control (de-antisymmetrized tensor) must exceed.
pub const NEGATIVE_CONTROL_MIN: f64 = 0.01;
