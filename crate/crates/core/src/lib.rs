pub mod algebra;
pub mod cli;
pub mod distributions;
pub mod error;
pub mod expr;
pub mod fgl;
pub mod quot;
pub mod ring;
pub mod shuffle;
pub mod surface;

pub use error::{Error, Result};
