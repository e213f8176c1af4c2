//! Convergence approach spaces on finite carriers.
//!
//! A convergence approach space assigns to every filter on a set `X` a
//! function `X -> V` measuring how well the filter converges to each point,
//! with values in a quantale `V`. On a finite carrier every proper filter is
//! principal, so a space is a finite table indexed by nonempty subsets and
//! points, and every construction of the theory becomes an exact, finite
//! computation.
//!
//! The crate is organised bottom-up:
//!
//! - [`quantale`]: the value quantale `V` in two exact presentations.
//! - [`finset`]: carriers, subsets as bitmasks, set families, grills and
//!   principal filters.
//! - [`vfunc`]: `V`-valued functions on a carrier.
//! - [`conv`]: plain finite convergence spaces and their pretopological and
//!   topological reflections.
//! - [`cap`]: convergence approach spaces, adherence and closure functions,
//!   the lower-hull operator and the three reflectors.
//! - [`vspace`]: the approach structure on `V` itself.
//! - [`ptfree`]: finite convergence frames `V^X` and their characterizations.
//! - [`format`]: the line-oriented space file format.
//! - [`gen`]: seeded random instances.
//! - [`checks`]: named law and theorem checks producing replayable witnesses.

// Values of one mode are totally ordered, so `!(a <= b)` reads as `a > b`.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cap;
pub mod checks;
pub mod conv;
mod error;
pub mod finset;
pub mod format;
pub mod gen;
pub mod ptfree;
pub mod quantale;
pub mod vfunc;
pub mod vspace;

pub use cap::CapSpace;
pub use conv::FiniteConvergence;
pub use error::{Error, Result};
pub use finset::{Carrier, PrincipalFilter, SetFamily, Subset};
pub use ptfree::ConvFrame;
pub use quantale::{QuantaleMode, QuantaleValue};
pub use vfunc::{PointMap, VFunction};
