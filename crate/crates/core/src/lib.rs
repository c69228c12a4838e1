pub mod cases;
pub mod composite;
pub mod document;
pub mod error;
pub mod invariants;
pub mod pattern;
pub mod polyring;
pub mod semifield;
pub mod tables;
pub mod verify;

pub use error::{Error, Result};
