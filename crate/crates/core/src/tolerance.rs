//! Numerical tolerances.
//!
//! Identities between character-sum expressions are compared after both
//! sides are brought to integer scale (multiplied by q^d or q^{2d}), so an
//! absolute threshold is meaningful.

/// Absolute pass threshold for scaled identities and inequalities.
pub const DEFAULT_TOLERANCE: f64 = 1e-6;

/// Slack allowed when comparing a measured integer against a real bound.
pub const BOUND_TOLERANCE: f64 = 1e-9;
