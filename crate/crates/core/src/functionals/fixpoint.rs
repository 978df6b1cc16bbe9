use super::expr::{expect_space, FunctionalExpr};
use super::param::ParamFunctionalExpr;
use crate::dagcat::{enumerate_homs, Category, HomSpace, Morphism, DEFAULT_ENUM_CAP};
use crate::error::{Error, Result};
use crate::order::{kleene_fix, kleene_pfix, FixPolicy, KleeneResult};
use crate::report::LawReport;

/// Exact stabilization for the finite categories, metric convergence for DStoch.
pub fn default_policy(category: Category) -> FixPolicy {
    match category {
        Category::DStoch => FixPolicy::metric(FixPolicy::DEFAULT_TOLERANCE),
        Category::Rel | Category::PInj => FixPolicy::exact(),
    }
}

/// Least fixed point of an endo-functional.
pub fn fix_functional(phi: &FunctionalExpr, policy: &FixPolicy) -> Result<KleeneResult<Morphism>> {
    if !phi.is_endo() {
        return Err(Error::dims(format!(
            "fixed points need an endo-functional, got {} -> {}",
            phi.domain(),
            phi.codomain()
        )));
    }
    kleene_fix(|h| phi.body().eval(h), phi.domain(), policy)
}

/// (pfix ψ)(p), the least x with x = ψ(x, p).
pub fn pfix_functional(
    psi: &ParamFunctionalExpr,
    p: &Morphism,
    policy: &FixPolicy,
) -> Result<KleeneResult<Morphism>> {
    expect_space(p, psi.p_space())?;
    kleene_pfix(|x, p| psi.body().eval(x, p), p, psi.x_space(), policy)
}

/// Result of a computation that may be undefined because a join was missing.
enum Outcome {
    Value(Morphism),
    Undefined,
}

fn outcome(result: Result<Morphism>) -> Result<Outcome> {
    match result {
        Ok(m) => Ok(Outcome::Value(m)),
        Err(e) if e.is_skippable() => Ok(Outcome::Undefined),
        Err(e) => Err(e),
    }
}

/// Compares two sides of an identity. Both undefined counts as skipped; one
/// side undefined is a violation, since the identities preserve definedness.
fn compare(
    report: &mut LawReport,
    law: &str,
    lhs: Outcome,
    rhs: Outcome,
    tolerance: f64,
    context: impl FnOnce() -> Vec<String>,
) {
    match (lhs, rhs) {
        (Outcome::Value(a), Outcome::Value(b)) => report.check(law, a.approx_eq(&b, tolerance), || {
            let mut w = context();
            w.push(format!("lhs={a}"));
            w.push(format!("rhs={b}"));
            w
        }),
        (Outcome::Undefined, Outcome::Undefined) => report.skip(),
        (a, _) => report.check(law, false, || {
            let mut w = context();
            let side = if matches!(a, Outcome::Undefined) { "lhs" } else { "rhs" };
            w.push(format!("{side} undefined (incompatible join)"));
            w
        }),
    }
}

/// fix(conj φ) = (fix φ)†.
pub fn check_fixed_point_adjoint(phi: &FunctionalExpr, policy: &FixPolicy) -> Result<LawReport> {
    let mut report = LawReport::new("fixed-point-adjoint");
    fixed_point_adjoint_into(&mut report, phi, policy)?;
    Ok(report)
}

pub(crate) fn fixed_point_adjoint_into(
    report: &mut LawReport,
    phi: &FunctionalExpr,
    policy: &FixPolicy,
) -> Result<()> {
    let conj = phi.conj();
    let lhs = outcome(fix_functional(&conj, policy).map(|r| r.value))?;
    let rhs = outcome(fix_functional(phi, policy).map(|r| r.value.dagger()))?;
    compare(report, "fix-conj", lhs, rhs, policy.tolerance, || vec![format!("phi={}", phi.body())]);
    Ok(())
}

fn enumerate_space(space: &HomSpace) -> Result<Vec<Morphism>> {
    enumerate_homs(space.category(), space.src(), space.dst(), DEFAULT_ENUM_CAP)
}

/// (pfix ψ)(p)† = (pfix conj ψ)(p†) for every parameter in the enumerated space.
pub fn check_pfix_adjoint(psi: &ParamFunctionalExpr, policy: &FixPolicy) -> Result<LawReport> {
    check_pfix_adjoint_on(psi, &enumerate_space(psi.p_space())?, policy)
}

pub fn check_pfix_adjoint_on(
    psi: &ParamFunctionalExpr,
    params: &[Morphism],
    policy: &FixPolicy,
) -> Result<LawReport> {
    let mut report = LawReport::new("pfix-adjoint");
    pfix_adjoint_into(&mut report, psi, &psi.conj(), params, policy)?;
    Ok(report)
}

fn pfix_adjoint_into(
    report: &mut LawReport,
    psi: &ParamFunctionalExpr,
    conj: &ParamFunctionalExpr,
    params: &[Morphism],
    policy: &FixPolicy,
) -> Result<()> {
    for p in params {
        let lhs = outcome(pfix_functional(psi, p, policy).map(|r| r.value.dagger()))?;
        let rhs = outcome(pfix_functional(conj, &p.dagger(), policy).map(|r| r.value))?;
        compare(report, "pfix-rev", lhs, rhs, policy.tolerance, || {
            vec![format!("psi={}", psi.body()), format!("p={p}")]
        });
    }
    Ok(())
}

/// pfix ψ = ψ ∘ ⟨pfix ψ, id⟩ at every enumerated parameter.
pub fn check_pfix_identity(psi: &ParamFunctionalExpr, policy: &FixPolicy) -> Result<LawReport> {
    let mut report = LawReport::new("pfix-identity");
    pfix_identity_into(&mut report, psi, &enumerate_space(psi.p_space())?, policy)?;
    Ok(report)
}

fn pfix_identity_into(
    report: &mut LawReport,
    psi: &ParamFunctionalExpr,
    params: &[Morphism],
    policy: &FixPolicy,
) -> Result<()> {
    for p in params {
        let fixed = match outcome(pfix_functional(psi, p, policy).map(|r| r.value))? {
            Outcome::Value(v) => v,
            Outcome::Undefined => {
                report.skip();
                continue;
            }
        };
        let unfolded = outcome(psi.apply(&fixed, p))?;
        compare(
            report,
            "pfix-identity",
            Outcome::Value(fixed),
            unfolded,
            policy.tolerance,
            || vec![format!("psi={}", psi.body()), format!("p={p}")],
        );
    }
    Ok(())
}

/// conj(pfix ψ) = pfix(conj ψ), pointwise: ((pfix ψ)(h†))† = (pfix conj ψ)(h).
pub fn check_conj_preservation(psi: &ParamFunctionalExpr, policy: &FixPolicy) -> Result<LawReport> {
    let mut report = LawReport::new("conj-preservation");
    let inputs = enumerate_space(&psi.p_space().flipped())?;
    conj_preservation_into(&mut report, psi, &psi.conj(), &inputs, policy)?;
    Ok(report)
}

fn conj_preservation_into(
    report: &mut LawReport,
    psi: &ParamFunctionalExpr,
    conj: &ParamFunctionalExpr,
    inputs: &[Morphism],
    policy: &FixPolicy,
) -> Result<()> {
    for h in inputs {
        let lhs = outcome(pfix_functional(psi, &h.dagger(), policy).map(|r| r.value.dagger()))?;
        let rhs = outcome(pfix_functional(conj, h, policy).map(|r| r.value))?;
        compare(report, "conj-preservation", lhs, rhs, policy.tolerance, || {
            vec![format!("psi={}", psi.body()), format!("h={h}")]
        });
    }
    Ok(())
}

/// All three parametrized identities over the enumerated parameter space.
pub fn check_parametrized(psi: &ParamFunctionalExpr, policy: &FixPolicy) -> Result<LawReport> {
    let mut report = LawReport::new("parametrized");
    parametrized_into(&mut report, psi, policy)?;
    Ok(report)
}

pub(crate) fn parametrized_into(
    report: &mut LawReport,
    psi: &ParamFunctionalExpr,
    policy: &FixPolicy,
) -> Result<()> {
    let params = enumerate_space(psi.p_space())?;
    let flipped = enumerate_space(&psi.p_space().flipped())?;
    let conj = psi.conj();
    pfix_adjoint_into(report, psi, &conj, &params, policy)?;
    pfix_identity_into(report, psi, &params, policy)?;
    conj_preservation_into(report, psi, &conj, &flipped, policy)
}
