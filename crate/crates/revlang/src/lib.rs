//! A first-order reversible language: clause definitions with static
//! function parameters and general recursion, a fuel-indexed evaluator, a
//! clause-local syntactic inverter, and a denotation of each definition as a
//! partial injection on a finite value universe.

pub mod ast;
pub mod error;
pub mod eval;
pub mod invert;
pub mod parser;
pub mod programs;
pub mod roundtrip;
pub mod universe;
pub mod validate;

pub use ast::{Clause, FnRef, FuncDef, Let, Pattern, Pos, Program, Value};
pub use error::{Error, Result};
pub use eval::{eval, eval_ref, Bindings, Outcome};
pub use invert::{alpha_equivalent, canonical, invert, invert_bindings, DEFAULT_SUFFIX};
pub use parser::{parse, parse_fnref, parse_value};
pub use roundtrip::{
    check_fuel_monotonicity, roundtrip_check, Failure, FailureKind, MonotonicityConfig, MonotonicityReport,
    RoundtripConfig, RoundtripReport, Sampler,
};
pub use universe::{denote, denote_on, Universe};
pub use validate::{validate, Diagnostic, DiagnosticKind};
