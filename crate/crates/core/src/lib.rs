//! Exact computations for symbolic dynamics.

pub mod budget;
pub mod chessboard;
pub mod cli;
pub mod counts;
pub mod dyck;
pub mod error;
pub mod factorize;
pub mod matrix;
pub mod numtheory;
pub mod perron;
pub mod poly;
pub mod rotations;
pub mod sft;
pub mod verify;
pub mod zeta;

pub use budget::Limits;
pub use counts::{CountSequence, PeriodIndex};
pub use error::{Error, Result};
