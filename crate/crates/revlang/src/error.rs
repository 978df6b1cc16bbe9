use thiserror::Error;

use crate::validate::Diagnostic;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error at {line}:{col}: {message}")]
    Syntax { line: usize, col: usize, message: String },
    #[error("invalid program: {}", summarize(.0))]
    Invalid(Vec<Diagnostic>),
    #[error("unknown function `{0}`")]
    UnknownFunction(String),
    #[error("function parameter `{0}` is not bound")]
    UnboundParameter(String),
    #[error("`{name}` expects {expected} function argument(s), got {found}")]
    Arity { name: String, expected: usize, found: usize },
    #[error("universe of terms up to size {bound} has {count} elements, above the cap of {cap}")]
    TooLarge { bound: usize, count: usize, cap: usize },
    #[error("denotation is not injective: {0} (validator bug)")]
    NotInjective(String),
    #[error(transparent)]
    Core(#[from] dualdag_core::Error),
}

fn summarize(diags: &[Diagnostic]) -> String {
    match diags {
        [] => "no diagnostics".into(),
        [one] => one.to_string(),
        [first, rest @ ..] => format!("{first} (and {} more)", rest.len()),
    }
}
