//! Exact linear algebra over GF(p^k).

pub(crate) mod field;
pub mod io;
mod jordan;
mod matrix;
mod partition;
mod poly;
mod subspace;

pub use field::{conway_polynomial, Elem, Field, FieldSpec};
pub use jordan::{nilpotent_jordan_partition, pencil_profile, PencilProfile};
pub use matrix::{Echelon, Matrix};
pub use partition::Partition;
pub use poly::{charpoly, Poly};
pub use subspace::Subspace;

/// Rank and canonical nullspace basis of `a`; see [`Matrix::rank_nullspace`].
pub fn rank_nullspace(a: &Matrix) -> (usize, Vec<Vec<Elem>>) {
    a.rank_nullspace()
}
