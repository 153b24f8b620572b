//! A worked example of a deformation functor that is not ind-representable.

mod data;
mod objects;
mod report;

pub use data::{algebra_a, algebra_b, quiver_z, Setting};
pub use objects::Classes;
pub use report::{run_counterexample, CounterexampleReport, Step};
