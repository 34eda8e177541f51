//! Exact arithmetic modulo a prime and dense rank computation.

mod field;
mod matrix;

pub use field::{field_inverse, is_prime, PrimeField, DEFAULT_PRIME};
pub use matrix::{random_invertible, DenseMatrix};
