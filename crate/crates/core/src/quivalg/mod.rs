//! Quivers, path bases of bound quiver algebras, opposite and tensor
//! product algebras.

mod algebra;
pub mod named;
mod quiver;

pub use algebra::{
    same_algebra, tensor_algebra, AlgElem, BoundQuiverAlgebra, Relation, TensorArrow, TensorFactors,
};
pub use quiver::{enumerate_paths, Arrow, Path, Quiver};

/// Shared handle to an algebra.
pub type Alg<F> = std::sync::Arc<BoundQuiverAlgebra<F>>;
