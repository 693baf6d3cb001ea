//! Rank-metric public-key encryption over Gabidulin codes, and the
//! polynomial-time key recovery that breaks it whenever
//! `w <= u/(u+1) (n - k)`.

pub mod attack;
pub mod cli;
pub mod error;
pub mod fieldtower;
pub mod flpke;
pub mod gabidulin;
pub mod matrix;
pub mod poly;
pub mod ranklin;
pub mod serial;

pub use error::{Error, Result};
