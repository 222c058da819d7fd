//! Rabinowitz Floer homology of circle bundles from the Gysin sequence.
//!
//! Exact integer and rational linear algebra, Novikov-graded maps, preset
//! problems and the computation engine. No I/O; see the `gysin` crate for
//! file formats and the command line.
#![no_std]

extern crate alloc;

pub mod engine;
pub mod error;
pub mod graded;
pub mod linalg;
pub mod presets;

pub use engine::{
    default_window, divisibility_report, euler_characteristic, euler_characteristic_check,
    hypersurface_discrepancy_report, invertibility_report, mapping_cone_homology, period_window, rabinowitz_homology,
    vanishing_report, Mode, RfhResult, Window,
};
pub use error::Error;
pub use graded::{DegT, GradedBasis, GradedMap, MapSpec, NovikovGrading, Scalar};
pub use linalg::{smith_normal_form, AbelianGroup, Int, IntMatrix, Matrix, RatMatrix, Rational, Ring};
pub use presets::GysinProblem;
