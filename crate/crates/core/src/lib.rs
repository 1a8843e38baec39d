//! Rank-metric and subspace code algebra over finite fields.
//!
//! This crate is `no_std` (it needs `alloc`). It covers prime-field and
//! extension-field arithmetic, matrices and canonical subspaces over GF(p),
//! exact counting functions, generalized Gabidulin codes and their rank
//! shells and translates, the conversions between constant-rank codes (CRCs)
//! and constant-dimension codes (CDCs), cardinality bounds, and an exact
//! maximum-clique oracle for tiny parameters.
//!
//! IO (code files, the sphere-intersection cache, the CLI) lives in the
//! companion `rankcodes` crate.

#![cfg_attr(not(test), no_std)]
#![allow(clippy::needless_range_loop)]

extern crate alloc;

pub mod bounds;
pub mod cdc;
pub mod counting;
mod error;
pub mod gf;
pub mod linalg;
pub mod rankcodes;
pub mod search;

pub use error::{Error, Result};

/// Exact non-negative count. Cardinalities overflow machine words quickly.
pub type BigCount = num_bigint::BigUint;
