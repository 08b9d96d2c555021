//! Exact evaluation and closed-form partial sums of generalized Tribonacci
//! sequences `W_n = r W_{n-1} + s W_{n-2} + t W_{n-3}`.
//!
//! All arithmetic is over exact rationals. Terms can be evaluated at any
//! signed index (negative indices need `t != 0`), either by direct iteration
//! or by companion-matrix powers. Partial sums over all, even or odd indices
//! in either direction use closed forms in a few terms of the sequence, and
//! fall back to summing term by term where no closed form is known.
//!
//! ```
//! use tribsum_core::{catalog, sums, Rational};
//!
//! let trib = &catalog::lookup("tribonacci").unwrap().def;
//! let s = sums::sum_forward_all(trib, 10).unwrap();
//! assert_eq!(s.value, Rational::from(326));
//! assert_eq!(s.case_used.name(), "FwdAll_Generic");
//! ```

pub mod catalog;
pub mod corollaries;
pub mod error;
pub mod oeis;
pub mod oracle;
pub mod rational;
pub mod recurrence;
pub mod sums;
pub mod verify;

pub use catalog::{list_all, lookup, CatalogEntry};
pub use error::{Error, Result};
pub use rational::Rational;
pub use recurrence::{
    companion_matrix, term_iterative, term_matrix, term_matrix_with_stats, CompanionMatrix,
    MatrixStats, RecurrenceParams, SequenceDef,
};
pub use sums::{
    denominators, select_case, sum, sum_checked, sum_oracle, Denominators, Direction, FormulaCase,
    Parity, SumQuery, SumResult,
};
