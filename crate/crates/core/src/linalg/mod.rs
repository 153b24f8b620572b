//! Exact scalars over Q and F_p, dense matrices, and the handful of
//! elimination routines every other module reduces to.

mod field;
mod invertible;
mod matrix;

pub use field::{Field, Scalar, MAX_PRIME};
pub use invertible::{BlockFamily, InvertibleSearch, SearchConfig};
pub use matrix::{reduce_by_rref, Matrix, Solution};

/// Picks columns of `space` completing a basis of `sub` to one of
/// `span(sub) + span(space)`. Returns the chosen columns of `space`.
pub fn complement_columns(sub: &Matrix, space: &Matrix) -> Matrix {
    let joint = Matrix::hstack(space.field(), space.rows(), &[sub, space]);
    let (_, pivots) = joint.rref();
    let chosen: Vec<usize> = pivots
        .into_iter()
        .filter(|&p| p >= sub.cols())
        .map(|p| p - sub.cols())
        .collect();
    space.select_columns(&chosen)
}

/// Coordinates of the columns of `targets` in the basis given by the columns of
/// `basis` (which must be linearly independent). `None` if some column is
/// outside the span.
pub fn coordinates(basis: &Matrix, targets: &Matrix) -> Option<Matrix> {
    let sol = basis.solve(targets).ok()??;
    Some(sol.particular)
}

/// Flattens a list of matrices into one column vector (row-major, in order).
pub fn flatten(blocks: &[&Matrix]) -> Vec<Scalar> {
    blocks
        .iter()
        .flat_map(|b| b.entries().iter().cloned())
        .collect()
}
