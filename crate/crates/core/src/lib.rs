//! Exact combinatorics of Hurwitz spaces over partially multiplicative
//! quandles: PMQ tables, truncated completions, the bisimplicial array
//! complex, cellular homology over ℤ, ℚ and 𝔽ₚ, and labeled point
//! configurations in the unit square.

pub mod array;
pub mod cells;
pub mod cli;
pub mod completion;
pub mod config;
pub mod error;
pub mod fixtures;
pub mod group;
pub mod homology;
pub mod io;
pub mod linalg;
pub mod pmq;
pub mod poincare;

pub use error::{Error, Result};
