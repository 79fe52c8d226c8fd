pub mod canon;
pub mod error;
pub mod exact;
pub mod fixtures;
pub mod group;
pub mod ideals;
pub mod linalg;
pub mod pipeline;
pub mod qexp;
pub mod verify;

pub use error::{Error, Result};
