pub mod construction;
pub mod error;
pub mod frames;
pub mod gf3;
pub mod lattice;
pub mod refine;
pub mod serde_big;
pub mod util;

pub use error::{Error, Result};
