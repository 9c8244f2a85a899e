//! Exact arithmetic: rationals, cyclotomic fields and Laurent polynomials in
//! fractional powers of `t`.

pub mod cyclotomic;
mod json;
pub mod laurent;
pub mod parse;
pub mod poly;

pub use cyclotomic::{binomial, default_field, falling, field, set_default_order, CyclotomicField, Scalar};
pub use laurent::{Exponent, Laurent};
pub use parse::{parse_exponent, parse_laurent, parse_scalar};
pub use poly::cyclotomic_polynomial;
