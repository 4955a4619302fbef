#![no_std]

extern crate alloc;

pub mod algebra;
pub mod error;
pub mod flat;
pub mod geometry;
pub mod gm1n;
pub mod group;
pub mod saito;

pub use error::{Error, Result};
