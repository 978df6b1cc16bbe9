//! The three concrete DCPO-†-categories: relations, partial injections and
//! subnormalized doubly stochastic maps.

pub mod doc;
pub mod laws;
mod morphism;
mod object;
mod pinj;
pub mod random;
mod rel;
mod stoch;

pub use laws::{law_suite, LawConfig, LawSuite};
pub use morphism::{compose, dagger, enumerate_homs, join, leq, Morphism, DEFAULT_ENUM_CAP};
pub use object::{Category, FinObject, HomSpace};
pub use pinj::PInjMorphism;
pub use rel::RelMorphism;
pub use stoch::{StochMorphism, DEFAULT_TOLERANCE};
