//! Exact computation of growth and skew-growth series for monoids given by
//! positive homogeneous presentations.
//!
//! A presentation `<L | R>` with relations equating positive words of equal
//! length induces a degree map (word length) on the quotient monoid. This
//! crate enumerates the elements of each degree exactly, computes minimal
//! common multiples and towers of them, produces the truncated growth
//! function `P(t)` and skew growth function `N(t)`, verifies the inversion
//! identity `P(t) * N(t) = 1`, and falsifies cancellativity up to a degree
//! bound. All arithmetic is exact (checked 64-bit integers); every result is
//! a statement about degrees up to an explicit truncation bound, never an
//! unbounded claim.

pub mod cancellativity;
pub mod cli;
pub mod divisibility;
pub mod enumerate;
pub mod error;
pub mod presentation;
pub mod rewrite;
pub mod series;
pub mod towers;

pub use error::{EngineError, PresentationError};
pub use presentation::{Letter, Presentation, Relation, Word};
pub use rewrite::{ClassTables, Element, Limits};
pub use series::{RationalForm, TruncatedSeries};
