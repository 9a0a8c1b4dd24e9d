pub mod brauer;
pub mod certification;
pub mod combinatorics;
pub mod error;
pub mod linalg;
pub mod protocol;
pub mod scalar;
pub mod twirl;

pub use error::{Error, Result};
pub use scalar::Real;

// The certification pipeline runs in f64; the f32 aliases are there for
// quick exploratory work on small instances where the tolerances allow it.
pub type Matrix = linalg::ComplexMatrix<f64>;
pub type Matrix32 = linalg::ComplexMatrix<f32>;
pub type Operator = linalg::HermitianOperator<f64>;
pub type Operator32 = linalg::HermitianOperator<f32>;
pub type Unitary = linalg::Unitary<f64>;
pub type Unitary32 = linalg::Unitary<f32>;
pub type Testers = certification::TesterSet<f64>;
pub type Testers32 = certification::TesterSet<f32>;
