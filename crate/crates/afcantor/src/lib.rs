pub mod amalgam;
pub mod bratteli;
pub mod error;
pub mod fdalg;
pub mod fraisse;
pub mod io;
pub mod k0;

pub use error::{Error, Result};
