use thiserror::Error;

use crate::dagcat::{Category, FinObject};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("category mismatch: expected {expected}, found {found}")]
    CategoryMismatch { expected: Category, found: Category },

    #[error("incompatible join: {0}")]
    IncompatibleJoin(String),

    #[error("unsupported in {category}: {what}")]
    Unsupported { category: Category, what: String },

    #[error("hom-set {src} -> {dst} too large to enumerate ({cells} cells, cap {cap})")]
    TooLarge {
        src: FinObject,
        dst: FinObject,
        cells: usize,
        cap: usize,
    },

    #[error("no convergence after {iterations} iterations")]
    NonConvergence { iterations: usize },

    #[error("step left the domain: {0}")]
    DomainMismatch(String),

    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("malformed document: {0}")]
    Document(String),

    #[error("host functional `{name}` failed: {message}")]
    Host { name: String, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn dims(msg: impl Into<String>) -> Self {
        Error::DimensionMismatch(msg.into())
    }

    pub(crate) fn unsupported(category: Category, what: impl Into<String>) -> Self {
        Error::Unsupported {
            category,
            what: what.into(),
        }
    }

    /// True for errors that only signal a missing join in a category with
    /// partial joins; law suites count these as skipped instances.
    pub fn is_skippable(&self) -> bool {
        matches!(self, Error::IncompatibleJoin(_))
    }
}
