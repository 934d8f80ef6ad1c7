//! Exact counting of standard Young tableaux of skew shape and exact sorting
//! probabilities of the corresponding diagram posets.

pub mod arith;
pub mod cli;
pub mod count;
pub mod error;
pub mod excited;
pub mod lattice;
pub mod oracle;
pub mod schur;
pub mod serde_exact;
pub mod shapes;
pub mod sorting;
pub mod verify;
pub mod walks;

pub use error::{Error, Result};
pub use shapes::{Cell, Partition, SkewShape};
