//! Quadratic form parameters over the integers, extended quadratic forms and their Witt groups.
//!
//! Everything is exact integer arithmetic. Groups are finitely generated abelian groups presented
//! as sums of cyclic factors; forms live on free lattices with an integer Gram matrix.

pub mod abelian;
pub mod error;
pub mod formparam;
pub mod matrix;
pub mod oracle;
pub mod qform;
pub mod qtensor;
pub mod sample;
pub mod suite;
pub mod witt;

pub use error::{Error, Result};
pub use matrix::Matrix;
