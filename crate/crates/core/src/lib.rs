//! Higher Auslander–Reiten theory for acyclic bound quiver algebras:
//! representations, Hom and Ext, the translates τ_d and τ_d⁻, d-almost
//! split sequences, tensor products of algebras and the d-completeness
//! verifier.

pub mod error;
pub mod exactla;

pub use error::{Error, Result};
pub mod quivalg;
pub mod repmod;
pub mod homolog;
pub mod seqcat;
pub mod complete;
pub mod tensorops;
pub mod knit;
