//! Exact dense linear algebra over Q and GF(p).
//!
//! All bases returned here are canonical: kernels come from the reduced
//! row echelon form, images from the echelon form of the transpose.

mod field;
mod mat;
pub mod poly;
mod subspace;

pub use field::{is_prime, Field, FieldSpec, PrimeField, Rationals};
pub use mat::{KernelImage, Mat, NoSolution};
pub use subspace::{unit, Subspace};

/// Field used when nothing else is requested.
pub const DEFAULT_PRIME: u32 = 32003;
