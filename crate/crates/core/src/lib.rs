pub mod error;
pub mod gef;
pub mod groebner;
pub mod linalg;
pub mod matrix;
pub mod poly;
pub mod ring;
pub mod sim;
pub mod synth;

pub use error::{Error, Result};
