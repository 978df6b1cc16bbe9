//! The canonical dagger trace on Rel and PInj:
//! Tr(f) = f_XY ∨ ⋁ₙ f_UY ∘ f_UUⁿ ∘ f_XU.

use super::expr::{Functional, FunctionalExpr, HostFn};
use crate::dagcat::{enumerate_homs, Category, DEFAULT_ENUM_CAP, FinObject, HomSpace, Morphism, PInjMorphism, RelMorphism};
use crate::error::{Error, Result};
use crate::order::{kleene_fix, FixPolicy};
use crate::report::LawReport;

/// Tr^U_{X,Y}(f) for f : X ⊎ U -> Y ⊎ U, with the X (resp. Y) block first.
///
/// The loop is a least fixed point: s = f_XU ∨ f_UU ∘ s collects every way of
/// entering U from X; Tr(f) = f_XY ∨ f_UY ∘ s. For partial injections an
/// orbit that cycles inside U without exiting contributes nothing.
pub fn trace(f: &Morphism, x: &FinObject, y: &FinObject, u: &FinObject) -> Result<Morphism> {
    if f.src().size != x.size + u.size || f.dst().size != y.size + u.size {
        return Err(Error::dims(format!(
            "trace over {u} needs a morphism {}+{} -> {}+{}, got {} -> {}",
            x.size,
            u.size,
            y.size,
            u.size,
            f.src(),
            f.dst()
        )));
    }
    let rel = match f {
        Morphism::Rel(r) => r.clone(),
        Morphism::PInj(p) => p.to_rel(),
        Morphism::Stoch(_) => return Err(Error::unsupported(Category::DStoch, "the dagger trace")),
    };
    let (nx, ny, nu) = (x.size, y.size, u.size);
    let f_xy = rel.block(0..nx, 0..ny, x.clone(), y.clone());
    let f_xu = rel.block(0..nx, ny..ny + nu, x.clone(), u.clone());
    let f_uy = rel.block(nx..nx + nu, 0..ny, u.clone(), y.clone());
    let f_uu = rel.block(nx..nx + nu, ny..ny + nu, u.clone(), u.clone());

    let space = HomSpace::new(Category::Rel, x.clone(), u.clone())?;
    let entries = kleene_fix(
        |s| {
            let s = s.as_rel().expect("iterates stay in Rel");
            Ok(f_xu.union(&f_uu.after(s)?)?.into())
        },
        &space,
        &FixPolicy::exact().with_max_iterations(nu + 2),
    )?
    .value;
    let entries = entries.as_rel().expect("iterates stay in Rel");
    let traced: RelMorphism = f_xy.union(&f_uy.after(entries)?)?;
    match f {
        Morphism::PInj(_) => Ok(PInjMorphism::from_rel(&traced)?.into()),
        _ => Ok(traced.into()),
    }
}

/// Tr^U as a host functional C(X⊎U, Y⊎U) -> C(X, Y).
pub fn trace_functional(category: Category, x: &FinObject, y: &FinObject, u: &FinObject) -> Result<FunctionalExpr> {
    let domain = HomSpace::new(category, x.disjoint_union(u), y.disjoint_union(u))?;
    let codomain = HomSpace::new(category, x.clone(), y.clone())?;
    let (x, y, u) = (x.clone(), y.clone(), u.clone());
    let host = HostFn::new("trace", domain.clone(), codomain, move |f| trace(f, &x, &y, &u));
    FunctionalExpr::new(domain, Functional::Host(host))
}

#[derive(Debug, Clone, PartialEq)]
pub struct TraceCheck {
    pub category: Category,
    pub x: usize,
    pub y: usize,
    pub u: usize,
    /// Also check dinaturality in U: Tr((id ⊎ g) ∘ f) = Tr(f ∘ (id ⊎ g)).
    pub dinaturality: bool,
}

impl TraceCheck {
    pub fn new(category: Category, x: usize, y: usize, u: usize) -> Self {
        TraceCheck {
            category,
            x,
            y,
            u,
            dinaturality: false,
        }
    }

    pub fn with_dinaturality(mut self) -> Self {
        self.dinaturality = true;
        self
    }
}

/// Tr(f)† = Tr(f†) for every f : X⊎U -> Y⊎U, plus naturality in X and Y:
/// Tr((b ⊎ id) ∘ f ∘ (a ⊎ id)) = b ∘ Tr(f) ∘ a for all a : X -> X, b : Y -> Y.
pub fn check_dagger_trace(check: &TraceCheck) -> Result<LawReport> {
    let cat = check.category;
    let cap = DEFAULT_ENUM_CAP;
    let (x, y, u) = (FinObject::new(check.x), FinObject::new(check.y), FinObject::new(check.u));
    let (xu, yu) = (x.disjoint_union(&u), y.disjoint_union(&u));
    let mut report = LawReport::new("dagger-trace");
    let fs = enumerate_homs(cat, &xu, &yu, cap)?;
    let id_u = Morphism::identity(cat, u.clone());
    let ax = enumerate_homs(cat, &x, &x, cap)?;
    let by = enumerate_homs(cat, &y, &y, cap)?;
    let lifted_a: Vec<Morphism> = ax.iter().map(|a| a.direct_sum(&id_u)).collect::<Result<_>>()?;
    let lifted_b: Vec<Morphism> = by.iter().map(|b| b.direct_sum(&id_u)).collect::<Result<_>>()?;
    let gs = if check.dinaturality {
        enumerate_homs(cat, &u, &u, cap)?
    } else {
        Vec::new()
    };
    let (id_x, id_y) = (Morphism::identity(cat, x.clone()), Morphism::identity(cat, y.clone()));
    for f in &fs {
        let tr = trace(f, &x, &y, &u)?;
        let tr_dagger = trace(&f.dagger(), &y, &x, &u)?;
        report.check("dagger", tr.dagger() == tr_dagger, || {
            vec![format!("f={f}"), format!("Tr(f)={tr}"), format!("Tr(f†)={tr_dagger}")]
        });
        for (a, la) in ax.iter().zip(&lifted_a) {
            for (b, lb) in by.iter().zip(&lifted_b) {
                let lhs = trace(&lb.after(&f.after(la)?)?, &x, &y, &u)?;
                let rhs = b.after(&tr.after(a)?)?;
                report.check("naturality", lhs == rhs, || {
                    vec![format!("f={f}"), format!("a={a}"), format!("b={b}")]
                });
            }
        }
        for g in &gs {
            let lhs = trace(&id_y.direct_sum(g)?.after(f)?, &x, &y, &u)?;
            let rhs = trace(&f.after(&id_x.direct_sum(g)?)?, &x, &y, &u)?;
            report.check("dinaturality", lhs == rhs, || vec![format!("f={f}"), format!("g={g}")]);
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn obj(n: usize) -> FinObject {
        FinObject::new(n)
    }

    #[test]
    fn identity_traces_to_identity() {
        for cat in [Category::Rel, Category::PInj] {
            let f = Morphism::identity(cat, obj(3));
            assert_eq!(trace(&f, &obj(1), &obj(1), &obj(2)).unwrap(), Morphism::identity(cat, obj(1)));
        }
    }

    #[test]
    fn wrong_shape_rejected() {
        let f = Morphism::identity(Category::Rel, obj(3));
        assert!(matches!(trace(&f, &obj(1), &obj(1), &obj(1)), Err(Error::DimensionMismatch(_))));
    }
}
