use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, NumAssign};

/// Real field the dense operator code is generic over (`f32` or `f64`).
///
/// Tolerances scale with the precision of the type: the `f64` values are the
/// contract figures used throughout the acceptance checks, the `f32` values
/// are loosened by roughly the ratio of machine epsilons.
pub trait Real:
    Float + FromPrimitive + NumAssign + Sum + Debug + Display + LowerExp + Default + Send + Sync + 'static
{
    /// Relative Hermiticity tolerance: `‖A − A†‖_max ≤ tol · (1 + ‖A‖_max)`.
    const HERMITIAN_TOL: f64;
    /// Tolerance on `‖U†U − 1‖_max` for unitaries.
    const UNITARY_TOL: f64;
    /// Absolute tolerance for structural identities (idempotence, orthogonality).
    const EXACT_TOL: f64;

    fn from_f64_lossy(x: f64) -> Self {
        Self::from_f64(x).expect("finite f64 converts to every Real")
    }

    fn lit(x: f64) -> Self {
        Self::from_f64_lossy(x)
    }

    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f64 {
    const HERMITIAN_TOL: f64 = 1e-10;
    const UNITARY_TOL: f64 = 1e-10;
    const EXACT_TOL: f64 = 1e-10;
}

impl Real for f32 {
    const HERMITIAN_TOL: f64 = 1e-4;
    const UNITARY_TOL: f64 = 1e-4;
    const EXACT_TOL: f64 = 1e-4;
}
