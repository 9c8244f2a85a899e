//! The conformal superalgebra `𝒜` and its central extension `𝒜(γ)`.
//!
//! Elements live in `𝒜(γ) ⊗ D̂`; the generator table is built from the
//! matrix-form brackets and central terms are loaded from a data file.

pub mod bracket;
pub mod elem;
pub mod gen;
pub mod matrix_form;
pub mod table;

pub use bracket::substitute_neg_lambda_minus_partial;
pub use elem::{ConfElem, LambdaPoly};
pub use gen::GenId;
pub use matrix_form::{expand_matrix_form, generator_matrix, matrix_preimage, MatrixKind};
pub use table::{central_terms, CentralTerm, ConformalAlgebra, GammaParam};
