pub mod category;
pub mod defsets;
pub mod error;
pub mod fincat;
pub mod indpro;
pub mod points;
pub mod sample;
pub mod setval;
pub mod verify;
mod text;

pub use error::{Error, Result};
