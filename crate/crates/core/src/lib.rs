pub mod bits;
pub mod classical;
pub mod cli;
pub mod distribution;
pub mod equivalence;
pub mod error;
pub mod protocols;
pub mod qstate;

pub use bits::BitString;
pub use error::{Error, Result};
