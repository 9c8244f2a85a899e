//! Exact symbolic engine for the large N=4 conformal superalgebra.
//!
//! The crate is organised bottom-up:
//!
//! * [`scalars`]: ℚ(ζ_N), Laurent polynomials in `t^{1/m}` and divided-power
//!   derivatives;
//! * [`mat2`]: 2×2 matrices over Laurent polynomials and the dagger involution;
//! * [`conformal`]: the 17-generator conformal superalgebra 𝒜(γ) with its
//!   λ-bracket, n-products and the loop extension to 𝒜 ⊗ D̂;
//! * [`axioms`]: skew-symmetry, Jacobi, homomorphism and primary-vector checks;
//! * [`autgrp`]: automorphisms θ_{A,B}∘τ_f∘ω^ε in normal form;
//! * [`loops`]: twisted loop algebras L(𝒜,σ);
//! * [`modes`]: the mode algebras Alg(𝒜,σ), named bases and table verification.

pub mod autgrp;
pub mod axioms;
pub mod conformal;
pub mod error;
pub mod linalg;
pub mod loops;
pub mod mat2;
pub mod modes;
pub mod scalars;

pub use autgrp::AutSpec;
pub use axioms::CheckReport;
pub use conformal::{ConfElem, ConformalAlgebra, GammaParam, GenId, LambdaPoly};
pub use error::{Error, Result};
pub use loops::LoopAlgebra;
pub use mat2::Mat2;
pub use modes::{ModeAlgebra, ModeElem, TableKind};
pub use scalars::{Exponent, Laurent, Scalar};
