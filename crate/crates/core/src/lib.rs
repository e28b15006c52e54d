pub mod arith;
pub mod bkp;
pub mod cli;
pub mod error;
pub mod io;
pub mod oracle;
pub mod rec;

pub use error::{Error, Result};
