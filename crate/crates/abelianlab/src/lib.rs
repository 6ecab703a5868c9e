//! Exact computation on morphic words and their complexity sequences.
//!
//! The crate has three layers:
//!
//! - [`words`] generates finite prefixes of morphic words (morphism
//!   iteration, codings, block codings) and enumerates factors, Parikh
//!   vectors and `l`-abelian equivalence classes.
//! - [`complexity`] turns those into integer sequences: factor complexity,
//!   `l`-abelian complexity, extremal letter counts over a letter set and
//!   their jump indicators.
//! - [`kernel`] detects base-`k` regular structure in any integer sequence
//!   by exact-rational elimination on kernel slices, re-verifies the
//!   guessed relations against the sequence, and evaluates the resulting
//!   linear representation in logarithmic time.  [`reflection`] evaluates
//!   and solves the reflection recurrences that explain why the catalog
//!   sequences are 2-regular, and [`verify`] machine-checks every named
//!   identity between the two layers at a configurable range.
//!
//! Everything is exact: letters and sequence values are integers, kernel
//! relation coefficients are arbitrary-precision rationals, and no
//! floating point is used anywhere.
//!
//! ```
//! use abelianlab::{catalog, complexity::{l_abelian_complexity, Statistic}};
//!
//! let tm = catalog::thue_morse();
//! assert_eq!(l_abelian_complexity(&tm, 2, 4).unwrap(), 8);
//! ```

pub mod catalog;
pub mod complexity;
pub mod error;
pub mod kernel;
pub mod reflection;
pub mod verify;
pub mod words;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book;
