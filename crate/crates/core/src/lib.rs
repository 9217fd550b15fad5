//! Finite choice structures over Savage acts.

pub mod act;
pub mod choice;
pub mod criteria;
pub mod error;
pub mod game;
pub mod hierarchy;
pub mod laws;
pub mod pref;
pub mod rational;
pub mod search;
pub mod space;
pub mod structure;

pub use error::{Error, Result};
