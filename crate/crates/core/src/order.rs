//! Pointed partial orders over hom-sets and the Kleene fixed-point engine.
//!
//! A [`HomDomain`] exposes exactly what Kleene iteration needs: a least
//! element, the order, suprema of ascending chains, and optionally an
//! exhaustive listing and a metric. Directed suprema are only provided for
//! ω-chains, which is all the iteration ever asks for.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A pointed partial order of morphisms between two fixed objects.
pub trait HomDomain {
    type Elem: Clone + PartialEq;

    fn bottom(&self) -> Self::Elem;

    fn leq(&self, a: &Self::Elem, b: &Self::Elem) -> bool;

    /// Supremum of an ascending chain. The empty chain has supremum ⊥.
    fn sup_of_chain(&self, chain: &[Self::Elem]) -> Self::Elem;

    /// Whether `a` is an element of this hom-set (right category and shape).
    fn contains(&self, a: &Self::Elem) -> bool;

    /// Every element, each exactly once, when the hom-set is finite and small.
    fn enumerate(&self) -> Option<Vec<Self::Elem>> {
        None
    }

    /// Distance between two elements, for numeric hom-sets only.
    fn distance(&self, _a: &Self::Elem, _b: &Self::Elem) -> Option<f64> {
        None
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FixMode {
    /// Stop when `step(x) == x`; needs decidable equality.
    ExactStabilization,
    /// Stop when successive iterates are closer than the tolerance.
    MetricConvergence,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FixPolicy {
    pub max_iterations: usize,
    pub tolerance: f64,
    pub mode: FixMode,
}

impl FixPolicy {
    pub const DEFAULT_MAX_ITERATIONS: usize = 10_000;
    pub const DEFAULT_TOLERANCE: f64 = 1e-9;

    pub fn exact() -> Self {
        FixPolicy {
            max_iterations: Self::DEFAULT_MAX_ITERATIONS,
            tolerance: Self::DEFAULT_TOLERANCE,
            mode: FixMode::ExactStabilization,
        }
    }

    pub fn metric(tolerance: f64) -> Self {
        FixPolicy {
            max_iterations: Self::DEFAULT_MAX_ITERATIONS,
            tolerance,
            mode: FixMode::MetricConvergence,
        }
    }

    pub fn with_max_iterations(mut self, max_iterations: usize) -> Self {
        self.max_iterations = max_iterations;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_iterations == 0 {
            return Err(Error::Config("max_iterations must be at least 1".into()));
        }
        if !(self.tolerance >= 0.0) {
            return Err(Error::Config("tolerance must be nonnegative".into()));
        }
        Ok(())
    }
}

impl Default for FixPolicy {
    fn default() -> Self {
        Self::exact()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct KleeneResult<T> {
    pub value: T,
    /// Number of applications of the step.
    pub iterations: usize,
    pub converged: bool,
    /// Last successive distance, metric mode only.
    pub residual: Option<f64>,
}

/// Least fixed point of `step` as the supremum of ⊥ ⊑ step(⊥) ⊑ step²(⊥) ⊑ ….
///
/// Continuity of `step` is the caller's obligation; see [`spot_check_monotone`].
pub fn kleene_fix<D, F>(mut step: F, domain: &D, policy: &FixPolicy) -> Result<KleeneResult<D::Elem>>
where
    D: HomDomain,
    F: FnMut(&D::Elem) -> Result<D::Elem>,
{
    policy.validate()?;
    let mut current = domain.bottom();
    for iteration in 1..=policy.max_iterations {
        let next = step(&current)?;
        if !domain.contains(&next) {
            return Err(Error::DomainMismatch(format!(
                "iterate {iteration} is not an element of the hom-set"
            )));
        }
        match policy.mode {
            FixMode::ExactStabilization => {
                if next == current {
                    return Ok(KleeneResult {
                        value: current,
                        iterations: iteration,
                        converged: true,
                        residual: None,
                    });
                }
            }
            FixMode::MetricConvergence => {
                let distance = domain.distance(&current, &next).ok_or_else(|| {
                    Error::Config("metric convergence requested on a domain without a metric".into())
                })?;
                if distance < policy.tolerance {
                    return Ok(KleeneResult {
                        value: next,
                        iterations: iteration,
                        converged: true,
                        residual: Some(distance),
                    });
                }
            }
        }
        current = next;
    }
    Err(Error::NonConvergence {
        iterations: policy.max_iterations,
    })
}

/// Parametrized fixed point at one parameter: the supremum of ψⁿ(⊥, p),
/// with ψ⁰(x, p) = x and ψⁿ⁺¹(x, p) = ψ(ψⁿ(x, p), p).
pub fn kleene_pfix<D, P, F>(
    mut step2: F,
    parameter: &P,
    domain: &D,
    policy: &FixPolicy,
) -> Result<KleeneResult<D::Elem>>
where
    D: HomDomain,
    F: FnMut(&D::Elem, &P) -> Result<D::Elem>,
{
    kleene_fix(|x| step2(x, parameter), domain, policy)
}

#[derive(Debug, Clone, PartialEq)]
pub struct MonotonicityReport<T> {
    pub checked: usize,
    /// Pairs that did not satisfy `f ⊑ g` and were therefore not tested.
    pub precondition_failures: usize,
    /// Pairs on which the step itself failed.
    pub step_errors: usize,
    /// Pairs `(f, g)` with `f ⊑ g` but `step(f) ⋢ step(g)`.
    pub violations: Vec<(T, T)>,
}

impl<T> MonotonicityReport<T> {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn spot_check_monotone<D, F>(
    mut step: F,
    domain: &D,
    sample_pairs: &[(D::Elem, D::Elem)],
) -> MonotonicityReport<D::Elem>
where
    D: HomDomain,
    F: FnMut(&D::Elem) -> Result<D::Elem>,
{
    let mut report = MonotonicityReport {
        checked: 0,
        precondition_failures: 0,
        step_errors: 0,
        violations: Vec::new(),
    };
    for (f, g) in sample_pairs {
        if !domain.leq(f, g) {
            report.precondition_failures += 1;
            continue;
        }
        match (step(f), step(g)) {
            (Ok(sf), Ok(sg)) => {
                report.checked += 1;
                if !domain.leq(&sf, &sg) {
                    report.violations.push((f.clone(), g.clone()));
                }
            }
            _ => report.step_errors += 1,
        }
    }
    report
}

/// All ordered pairs `(f, g)` with `f ⊑ g` from an enumerable domain.
pub fn ordered_pairs<D: HomDomain>(domain: &D) -> Option<Vec<(D::Elem, D::Elem)>> {
    let elems = domain.enumerate()?;
    let mut pairs = Vec::new();
    for f in &elems {
        for g in &elems {
            if domain.leq(f, g) {
                pairs.push((f.clone(), g.clone()));
            }
        }
    }
    Some(pairs)
}
