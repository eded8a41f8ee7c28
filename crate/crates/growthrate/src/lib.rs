//! File formats, bundled data and the command-line front end for
//! `growthrate-core`.
//!
//! The core crate is `no_std` and does no IO. This crate adds JSON forms of
//! every core object, CSV series output, DOT fusion graphs, the bundled
//! `SL(2,q)` tables and matrices, and the `growthrate` binary.

pub mod cli;
pub mod data;
pub mod error;
pub mod format;
pub mod json;
pub mod run;
pub mod spec;
pub mod verify;

pub use error::{Error, Result};
