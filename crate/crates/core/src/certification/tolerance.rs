//! Numerical thresholds shared by every certification check.

/// Absolute tolerance on equality constraints (zero-error, completeness, Born value).
pub const EQUALITY_TOL: f64 = 1e-10;
/// An operator counts as PSD when its minimum eigenvalue is at least `-PSD_TOL`.
pub const PSD_TOL: f64 = 1e-10;
/// Agreement required between an external solver's optimum and the formula.
pub const SOLVER_TOL: f64 = 1e-4;
/// Largest side length for which minimum eigenvalues are computed by full
/// diagonalization; above it a Gershgorin bound in the local `|φ⁺⟩` basis is used.
pub const DENSE_EIG_LIMIT: usize = 256;
