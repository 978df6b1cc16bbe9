//! Finite domain-enriched dagger categories and the fixed-point machinery
//! that lives on them.
//!
//! * [`order`] — pointed posets with chain suprema and Kleene iteration.
//! * [`dagcat`] — relations, partial injections and subnormalized doubly
//!   stochastic maps, with exhaustive and sampled law suites.
//! * [`functionals`] — a small DSL of continuous functionals on hom-sets,
//!   their conjugates, fixed points, natural families and the dagger trace.

pub mod dagcat;
pub mod error;
pub mod functionals;
pub mod order;
pub mod report;

pub use error::{Error, Result};
