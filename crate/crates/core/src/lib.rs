pub mod algebra;
pub mod aobjects;
pub mod counterexample;
pub mod deformation;
pub mod error;
pub mod homology;
pub mod linalg;
pub mod random;
pub mod rep;

pub use error::{Error, Result};
pub use linalg::{Field, Matrix, Scalar};
