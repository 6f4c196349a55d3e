//! Exact computation of type B (signed) permutation statistics.
//!
//! The crate counts r-Stirling numbers of type B, type B r-derangements and
//! their m-associated generalizations several independent ways:
//!
//! - [`sequences`]: recurrences, explicit sums and closed forms,
//! - [`riordan`]: exponential Riordan arrays over truncated [`fps`] series,
//! - [`permcore`]: exhaustive enumeration of signed permutations, the oracle
//!   every other route is checked against.
//!
//! [`verify`] cross-checks the routes over a parameter grid and reports the
//! first disagreeing cell.
//!
//! The crate is `no_std` and only needs `alloc`.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod error;
pub mod fps;
pub mod numeric;
pub mod permcore;
pub mod riordan;
pub mod sequences;
pub mod verify;

pub use error::{Error, Result};
pub use fps::FormalPowerSeries;
pub use numeric::{ExactInt, ExactRational};
pub use permcore::{CycleDecomposition, Mode, SignedPermutation};
pub use riordan::{ExpRiordanArray, Provenance, TriangleTable};
