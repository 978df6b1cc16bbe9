//! Natural families α_{X,Y} : C(FX, FY) × C(GX, GY) -> C(FX, FY) and the
//! exhaustive checks that their iterates and parametrized fixed points stay
//! natural and self-conjugate.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use super::expr::Functional;
use super::fixpoint::pfix_functional;
use super::param::{ParamExpr, ParamFunctionalExpr};
use super::trace::trace_functional;
use crate::dagcat::{enumerate_homs, Category, FinObject, HomSpace, Morphism, DEFAULT_ENUM_CAP};
use crate::error::{Error, Result};
use crate::order::{FixPolicy, HomDomain};
use crate::report::LawReport;

/// A dagger endofunctor on Rel or PInj.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FunctorDesc {
    Identity,
    /// X ↦ X ⊎ A, f ↦ f ⊎ id_A.
    DisjointUnionWith(FinObject),
}

impl FunctorDesc {
    pub fn object(&self, x: &FinObject) -> FinObject {
        match self {
            FunctorDesc::Identity => x.clone(),
            FunctorDesc::DisjointUnionWith(a) => x.disjoint_union(a),
        }
    }

    pub fn morphism(&self, f: &Morphism) -> Result<Morphism> {
        match self {
            FunctorDesc::Identity => Ok(f.clone()),
            FunctorDesc::DisjointUnionWith(a) => f.direct_sum(&Morphism::identity(f.category(), a.clone())),
        }
    }

    /// F(f†) = F(f)†, F(id) = id and F(g ∘ f) = F(g) ∘ F(f) on every hom-set
    /// between objects of the given sizes.
    pub fn check_dagger_functor(&self, category: Category, sizes: &[usize]) -> Result<LawReport> {
        let mut report = LawReport::new("dagger-functor");
        let objects: Vec<FinObject> = sizes.iter().map(|&n| FinObject::new(n)).collect();
        for x in &objects {
            let id = Morphism::identity(category, x.clone());
            let image = self.morphism(&id)?;
            let target = Morphism::identity(category, self.object(x));
            report.check("identity", image == target, || vec![format!("X={x}")]);
            for y in &objects {
                let fs = enumerate_homs(category, x, y, DEFAULT_ENUM_CAP)?;
                for f in &fs {
                    let holds = self.morphism(&f.dagger())? == self.morphism(f)?.dagger();
                    report.check("dagger", holds, || vec![format!("f={f}")]);
                }
                for z in &objects {
                    for g in enumerate_homs(category, y, z, DEFAULT_ENUM_CAP)? {
                        let fg = self.morphism(&g)?;
                        for f in &fs {
                            let holds = self.morphism(&g.after(f)?)? == fg.after(&self.morphism(f)?)?;
                            report.check("composition", holds, || vec![format!("f={f}"), format!("g={g}")]);
                        }
                    }
                }
            }
        }
        Ok(report)
    }
}

impl fmt::Display for FunctorDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FunctorDesc::Identity => f.write_str("Id"),
            FunctorDesc::DisjointUnionWith(a) => write!(f, "- ⊎ {a}"),
        }
    }
}

type Instantiate = dyn Fn(&FinObject, &FinObject) -> Result<ParamFunctionalExpr> + Send + Sync;

/// How the component α_{X,Y} is obtained at each pair of objects.
#[derive(Clone)]
pub enum ComponentTemplate {
    /// One body, typed afresh at every (X, Y).
    Uniform(ParamExpr),
    /// An arbitrary construction per (X, Y).
    Indexed(Arc<Instantiate>),
}

impl fmt::Debug for ComponentTemplate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComponentTemplate::Uniform(body) => write!(f, "Uniform({body})"),
            ComponentTemplate::Indexed(_) => f.write_str("Indexed(..)"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct NaturalFamily {
    pub name: String,
    pub category: Category,
    pub f: FunctorDesc,
    pub g: FunctorDesc,
    pub component: ComponentTemplate,
}

impl NaturalFamily {
    /// α(h, p) = h ∨ p, with F = G.
    pub fn join_family(category: Category, functor: FunctorDesc) -> Self {
        NaturalFamily {
            name: "join".into(),
            category,
            f: functor.clone(),
            g: functor,
            component: ComponentTemplate::Uniform(ParamExpr::join(ParamExpr::ArgX, ParamExpr::ArgP)),
        }
    }

    /// α(h, p) = p, with F = G.
    pub fn projection_family(category: Category, functor: FunctorDesc) -> Self {
        NaturalFamily {
            name: "projection".into(),
            category,
            f: functor.clone(),
            g: functor,
            component: ComponentTemplate::Uniform(ParamExpr::ArgP),
        }
    }

    /// α_{X,Y}(h, p) = Tr^U_{X,Y}(p), ignoring h; G = − ⊎ U.
    pub fn trace_family(category: Category, u: FinObject) -> Self {
        let loop_obj = u.clone();
        let build = move |x: &FinObject, y: &FinObject| {
            let tr = trace_functional(category, x, y, &loop_obj)?;
            let body = ParamExpr::map(tr.body().clone(), ParamExpr::ArgP);
            ParamFunctionalExpr::new(tr.codomain().clone(), tr.domain().clone(), body)
        };
        NaturalFamily {
            name: "trace".into(),
            category,
            f: FunctorDesc::Identity,
            g: FunctorDesc::DisjointUnionWith(u),
            component: ComponentTemplate::Indexed(Arc::new(build)),
        }
    }

    /// α_{X,Y}(h, p) = c ∘ h for a fixed endomorphism c; self-conjugate only
    /// when c is hermitian.
    pub fn post_compose_family(c: Morphism) -> Self {
        NaturalFamily {
            name: "post-compose".into(),
            category: c.category(),
            f: FunctorDesc::Identity,
            g: FunctorDesc::Identity,
            component: ComponentTemplate::Uniform(ParamExpr::map(Functional::PostCompose(c), ParamExpr::ArgX)),
        }
    }

    pub fn x_space(&self, x: &FinObject, y: &FinObject) -> Result<HomSpace> {
        HomSpace::new(self.category, self.f.object(x), self.f.object(y))
    }

    pub fn p_space(&self, x: &FinObject, y: &FinObject) -> Result<HomSpace> {
        HomSpace::new(self.category, self.g.object(x), self.g.object(y))
    }

    /// The component α_{X,Y}.
    pub fn instantiate(&self, x: &FinObject, y: &FinObject) -> Result<ParamFunctionalExpr> {
        let (xs, ps) = (self.x_space(x, y)?, self.p_space(x, y)?);
        let psi = match &self.component {
            ComponentTemplate::Uniform(body) => ParamFunctionalExpr::new(xs.clone(), ps.clone(), body.clone())?,
            ComponentTemplate::Indexed(build) => build(x, y)?,
        };
        if *psi.x_space() != xs || *psi.p_space() != ps {
            return Err(Error::dims(format!(
                "component at ({x}, {y}) is typed {} × {}, expected {xs} × {ps}",
                psi.x_space(),
                psi.p_space()
            )));
        }
        Ok(psi)
    }
}

/// An enumerated hom-set with a reverse index.
struct HomIndex {
    elems: Vec<Morphism>,
    index: HashMap<Morphism, u32>,
}

impl HomIndex {
    fn build(space: &HomSpace) -> Result<Self> {
        let elems = enumerate_homs(space.category(), space.src(), space.dst(), DEFAULT_ENUM_CAP)?;
        let index = elems.iter().enumerate().map(|(i, m)| (m.clone(), i as u32)).collect();
        Ok(HomIndex { elems, index })
    }

    fn of(&self, m: &Morphism) -> u32 {
        *self.index.get(m).expect("results stay inside the enumerated hom-set")
    }
}

const UNDEFINED: u32 = u32::MAX;

fn defined(result: Result<Morphism>) -> Result<Option<Morphism>> {
    match result {
        Ok(m) => Ok(Some(m)),
        Err(e) if e.is_skippable() => Ok(None),
        Err(e) => Err(e),
    }
}

/// Everything about α_{X,Y} that the squares need, keyed by enumeration index.
struct Component {
    h: HomIndex,
    p: HomIndex,
    /// α(h, p) at `h * |P| + p`.
    alpha: Vec<u32>,
    /// αⁿ(⊥, p) at `n * |P| + p` for n ≤ fuel.
    iterates: Vec<u32>,
    /// (pfix α)(p).
    pfix: Vec<u32>,
}

impl Component {
    fn build(psi: &ParamFunctionalExpr, fuel: usize, policy: &FixPolicy) -> Result<Self> {
        let h = HomIndex::build(psi.x_space())?;
        let p = HomIndex::build(psi.p_space())?;
        let np = p.elems.len();
        let mut alpha = Vec::with_capacity(h.elems.len() * np);
        for x in &h.elems {
            for q in &p.elems {
                alpha.push(match defined(psi.apply(x, q))? {
                    Some(m) => h.of(&m),
                    None => UNDEFINED,
                });
            }
        }
        let mut iterates = vec![h.of(&psi.x_space().bottom()); np];
        for n in 0..fuel {
            for q in 0..np {
                let prev = iterates[n * np + q];
                let next = if prev == UNDEFINED {
                    UNDEFINED
                } else {
                    alpha[prev as usize * np + q]
                };
                iterates.push(next);
            }
        }
        let mut pfix = Vec::with_capacity(np);
        for q in &p.elems {
            pfix.push(match defined(pfix_functional(psi, q, policy).map(|r| r.value))? {
                Some(m) => h.of(&m),
                None => UNDEFINED,
            });
        }
        Ok(Component {
            h,
            p,
            alpha,
            iterates,
            pfix,
        })
    }
}

/// Checks naturality squares for one family, caching components per object pair.
///
/// For a : X' -> X and b : Y -> Y', with h ∈ C(FX, FY) and p ∈ C(GX, GY):
/// (i)   α_{X',Y'}(Fb∘h∘Fa, Gb∘p∘Ga) = Fb∘α_{X,Y}(h, p)∘Fa;
/// (ii)  αⁿ_{X',Y'}(⊥, Gb∘p∘Ga) = Fb∘αⁿ_{X,Y}(⊥, p)∘Fa for n ≤ fuel;
/// (iii) (pfix α_{X',Y'})(Gb∘p∘Ga) = Fb∘(pfix α_{X,Y})(p)∘Fa.
/// Instances where either side of (i) needs a missing join are skipped.
pub struct NaturalityHarness<'a> {
    family: &'a NaturalFamily,
    fuel: usize,
    policy: FixPolicy,
    components: HashMap<(FinObject, FinObject), Component>,
}

impl<'a> NaturalityHarness<'a> {
    pub fn new(family: &'a NaturalFamily, fuel: usize, policy: &FixPolicy) -> Self {
        NaturalityHarness {
            family,
            fuel,
            policy: policy.clone(),
            components: HashMap::new(),
        }
    }

    fn ensure(&mut self, x: &FinObject, y: &FinObject) -> Result<()> {
        let key = (x.clone(), y.clone());
        if !self.components.contains_key(&key) {
            let psi = self.family.instantiate(x, y)?;
            let component = Component::build(&psi, self.fuel, &self.policy)?;
            self.components.insert(key, component);
        }
        Ok(())
    }

    pub fn check(
        &mut self,
        x: &FinObject,
        x2: &FinObject,
        y: &FinObject,
        y2: &FinObject,
    ) -> Result<LawReport> {
        self.ensure(x, y)?;
        self.ensure(x2, y2)?;
        let cat = self.family.category;
        let (fam, fuel) = (self.family, self.fuel);
        let src = &self.components[&(x.clone(), y.clone())];
        let dst = &self.components[&(x2.clone(), y2.clone())];
        let (nh, np, np2) = (src.h.elems.len(), src.p.elems.len(), dst.p.elems.len());
        let a_homs = enumerate_homs(cat, x2, x, DEFAULT_ENUM_CAP)?;
        let b_homs = enumerate_homs(cat, y, y2, DEFAULT_ENUM_CAP)?;

        let mut report = LawReport::new("naturality");
        let mut counts = [0u64; 3];
        let witness = |a: &Morphism, b: &Morphism, extra: Vec<String>| {
            let mut w = vec![format!("a={a}"), format!("b={b}")];
            w.extend(extra);
            w
        };
        let mut th = vec![0u32; nh];
        let mut tp = vec![0u32; np];
        for a in &a_homs {
            let (fa, ga) = (fam.f.morphism(a)?, fam.g.morphism(a)?);
            for b in &b_homs {
                let (fb, gb) = (fam.f.morphism(b)?, fam.g.morphism(b)?);
                for (slot, h) in th.iter_mut().zip(&src.h.elems) {
                    *slot = dst.h.of(&fb.after(&h.after(&fa)?)?);
                }
                for (slot, p) in tp.iter_mut().zip(&src.p.elems) {
                    *slot = dst.p.of(&gb.after(&p.after(&ga)?)?);
                }
                let push = |v: u32| if v == UNDEFINED { UNDEFINED } else { th[v as usize] };

                for hi in 0..nh {
                    let lifted = th[hi] as usize * np2;
                    let row = hi * np;
                    for pi in 0..np {
                        let lhs = dst.alpha[lifted + tp[pi] as usize];
                        let rhs = src.alpha[row + pi];
                        if lhs == UNDEFINED || rhs == UNDEFINED {
                            report.skip();
                            continue;
                        }
                        counts[0] += 1;
                        if lhs != th[rhs as usize] {
                            let (h, p) = (&src.h.elems[hi], &src.p.elems[pi]);
                            report.violate("square", witness(a, b, vec![format!("h={h}"), format!("p={p}")]));
                        }
                    }
                }
                for n in 0..=fuel {
                    for pi in 0..np {
                        let lhs = dst.iterates[n * np2 + tp[pi] as usize];
                        let rhs = push(src.iterates[n * np + pi]);
                        counts[1] += 1;
                        if lhs != rhs {
                            let p = &src.p.elems[pi];
                            report.violate("iterate", witness(a, b, vec![format!("n={n}"), format!("p={p}")]));
                        }
                    }
                }
                for pi in 0..np {
                    counts[2] += 1;
                    if dst.pfix[tp[pi] as usize] != push(src.pfix[pi]) {
                        let p = &src.p.elems[pi];
                        report.violate("pfix", witness(a, b, vec![format!("p={p}")]));
                    }
                }
            }
        }
        report.tally("square", counts[0]);
        report.tally("iterate", counts[1]);
        report.tally("pfix", counts[2]);
        Ok(report)
    }

    /// Every (X, X', Y, Y') with sizes drawn from `sizes`.
    pub fn check_all(&mut self, sizes: &[usize]) -> Result<LawReport> {
        let mut report = LawReport::new("naturality");
        let objects: Vec<FinObject> = sizes.iter().map(|&n| FinObject::new(n)).collect();
        for x in &objects {
            for x2 in &objects {
                for y in &objects {
                    for y2 in &objects {
                        report.merge(self.check(x, x2, y, y2)?);
                    }
                }
            }
        }
        Ok(report)
    }
}

pub fn check_naturality(
    family: &NaturalFamily,
    x: &FinObject,
    x2: &FinObject,
    y: &FinObject,
    y2: &FinObject,
    fuel: usize,
    policy: &FixPolicy,
) -> Result<LawReport> {
    NaturalityHarness::new(family, fuel, policy).check(x, x2, y, y2)
}

/// α_{X,Y}(h, p)† = α_{Y,X}(h†, p†) for all enumerated h, p, checked once
/// directly and once through the conjugate component conj(α_{Y,X}); the two
/// routes must agree instance by instance. Also checks that pfix α inherits
/// self-conjugacy.
pub fn check_self_conjugate(
    family: &NaturalFamily,
    x: &FinObject,
    y: &FinObject,
    policy: &FixPolicy,
) -> Result<LawReport> {
    let alpha = family.instantiate(x, y)?;
    let alpha_rev = family.instantiate(y, x)?;
    let conj_rev = alpha_rev.conj();
    let hs = HomIndex::build(alpha.x_space())?.elems;
    let ps = HomIndex::build(alpha.p_space())?.elems;
    let mut report = LawReport::new("self-conjugate");
    for h in &hs {
        for p in &ps {
            let lhs = defined(alpha.apply(h, p))?;
            let direct = defined(alpha_rev.apply(&h.dagger(), &p.dagger()))?;
            let via_conj = defined(conj_rev.apply(h, p))?;
            let preserves = lhs.as_ref().map(Morphism::dagger) == direct;
            let equals_conj = lhs == via_conj;
            let w = || vec![format!("h={h}"), format!("p={p}")];
            report.check("dagger-preserving", preserves, w);
            report.check("equals-conjugate", equals_conj, w);
            report.check("routes-agree", preserves == equals_conj, w);
        }
    }
    for p in &ps {
        let lhs = defined(pfix_functional(&alpha, p, policy).map(|r| r.value.dagger()))?;
        let rhs = defined(pfix_functional(&alpha_rev, &p.dagger(), policy).map(|r| r.value))?;
        report.check("pfix", lhs == rhs, || vec![format!("p={p}")]);
    }
    Ok(report)
}
