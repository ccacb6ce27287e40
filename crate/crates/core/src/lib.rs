//! The new transmuted logistic-exponential (NTLE) lifetime distribution:
//! pointwise functions, analytic properties, ten estimators, a Monte Carlo
//! harness and a model-comparison suite.
pub mod analytics;
pub mod cli;
pub mod dataset;
pub mod dist;
pub mod error;
pub mod estimation;
pub mod gof;
pub mod numeric;
pub mod quadrature;
pub mod rng;
pub mod simulation;

pub use dist::{ModeKind, ModeResult, NtleParams, UCoord};
pub use error::{NtleError, Result};
pub use estimation::{EstimationMethod, FitResult, Sample};
pub use quadrature::QuadratureSpec;
