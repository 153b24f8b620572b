//! Quivers with relations, the finite-dimensional algebras they present and
//! homomorphisms between them.

mod hom;
mod path_algebra;
mod quiver;

pub use hom::{are_conjugate, AlgebraHom, Conjugacy, HomViolation};
pub use path_algebra::{BuildOptions, Element, PathAlgebra};
pub use quiver::{Arrow, BoundQuiver, Path, PathDisplay, Quiver, Relation};
