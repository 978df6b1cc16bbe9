//! Continuous functionals on hom-sets: a closed DSL with symbolic
//! conjugation, (parametrized) least fixed points, the fixed-point adjoint
//! checks, natural families and the dagger trace.

pub mod doc;
mod expr;
mod fixpoint;
mod natural;
mod param;
pub mod random;
mod trace;

pub use doc::{functional_from_json, functional_to_json, param_functional_from_json, param_functional_to_json};
pub use expr::{conj_by_definition, Functional, FunctionalExpr, HostFn};
pub use fixpoint::{
    check_conj_preservation, check_fixed_point_adjoint, check_parametrized, check_pfix_adjoint,
    check_pfix_adjoint_on, check_pfix_identity, default_policy, fix_functional, pfix_functional,
};
pub use natural::{
    check_naturality, check_self_conjugate, ComponentTemplate, FunctorDesc, NaturalFamily, NaturalityHarness,
};
pub use param::{ParamExpr, ParamFunctionalExpr};
pub use random::{random_fixed_point_adjoint_suite, random_parametrized_suite, RandomSuiteConfig, TreeConfig, TreeGen};
pub use trace::{check_dagger_trace, trace, trace_functional, TraceCheck};
