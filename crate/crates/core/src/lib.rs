//! Exact growth rates of tensor powers of finite group representations.
//!
//! For a representation `V` of a finite group, `b(n)` counts the
//! indecomposable summands of `V^{⊗n}` with multiplicity. This crate computes
//! `b(n)` exactly, its periodic asymptotic form `a(n) = c(n)·(dim V)^n`, and
//! the spectral data controlling how fast `b(n)/a(n) → 1`:
//!
//! * [`exact`]: rationals, cyclotomic numbers in a canonical basis and
//!   certified complex embeddings.
//! * [`chartab`]: character tables, built-in group families and
//!   representation characters.
//! * [`growth`]: column sums, the exact formula, the inner-product oracle,
//!   asymptotic formulas and convergence data.
//! * [`modular`]: action matrices of nonsemisimple examples (cyclic
//!   `p`-groups, the Klein four group, bundled `SL(2,q)` data), matrix-power
//!   growth and fusion graphs.
//! * [`closedform`]: per-family closed formulas, cross-checked against the
//!   generic engine.
//!
//! The crate is `no_std` and only needs `alloc`; file formats, bundled tables
//! and the command-line tool live in the `growthrate` crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod chartab;
pub mod closedform;
mod error;
pub mod exact;
pub mod growth;
pub mod modular;

pub use error::{Error, Result};
