//! Machine-checkable law suites for the three categories.
//!
//! Rel and PInj are checked exhaustively over every hom-set between objects
//! of the configured sizes; DStoch is checked on seeded random samples.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::morphism::{enumerate_homs, Morphism, DEFAULT_ENUM_CAP};
use super::object::{Category, FinObject, HomSpace};
use super::pinj::PInjMorphism;
use super::random::{random_stoch, random_stoch_below};
use super::rel::RelMorphism;
use super::stoch::{StochMorphism, DEFAULT_TOLERANCE};
use crate::error::{Error, Result};
use crate::order::HomDomain;
use crate::report::LawReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LawSuite {
    /// id† = id, (g∘f)† = f†∘g†, f†† = f.
    Dagger,
    /// Strict, monotone composition that preserves chain suprema.
    Enrichment,
    /// f ⊑ g ⇒ f† ⊑ g†.
    MonotoneDagger,
    /// f ⊑ g ⇔ f† ⊑ g†, and the dagger preserves chain suprema and ⊥.
    OrderIso,
}

impl LawSuite {
    pub const ALL: [LawSuite; 4] = [
        LawSuite::Dagger,
        LawSuite::Enrichment,
        LawSuite::MonotoneDagger,
        LawSuite::OrderIso,
    ];

    pub fn name(self) -> &'static str {
        match self {
            LawSuite::Dagger => "dagger",
            LawSuite::Enrichment => "enrichment",
            LawSuite::MonotoneDagger => "monotone-dagger",
            LawSuite::OrderIso => "order-iso",
        }
    }
}

impl fmt::Display for LawSuite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for LawSuite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        LawSuite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown law suite `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LawConfig {
    /// Object sizes to range over.
    pub sizes: Vec<usize>,
    pub enum_cap: usize,
    /// Random instances per suite (DStoch).
    pub trials: usize,
    /// Mandatory for randomized suites.
    pub seed: Option<u64>,
    pub tolerance: f64,
}

impl Default for LawConfig {
    fn default() -> Self {
        LawConfig {
            sizes: vec![0, 1, 2],
            enum_cap: DEFAULT_ENUM_CAP,
            trials: 1000,
            seed: None,
            tolerance: DEFAULT_TOLERANCE,
        }
    }
}

impl LawConfig {
    pub fn up_to(max_size: usize) -> Self {
        LawConfig {
            sizes: (0..=max_size).collect(),
            ..Default::default()
        }
    }

    pub fn with_sizes(sizes: impl Into<Vec<usize>>) -> Self {
        LawConfig {
            sizes: sizes.into(),
            ..Default::default()
        }
    }

    pub fn seeded(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn with_trials(mut self, trials: usize) -> Self {
        self.trials = trials;
        self
    }

    fn validate(&self) -> Result<()> {
        if !(self.tolerance > 0.0) {
            return Err(Error::Config("tolerance must be positive".into()));
        }
        if self.sizes.is_empty() {
            return Err(Error::Config("no object sizes selected".into()));
        }
        Ok(())
    }
}

/// Whether a suite on this category draws random instances.
pub fn is_randomized(category: Category) -> bool {
    !category.is_enumerable()
}

pub fn law_suite(category: Category, suite: LawSuite, config: &LawConfig) -> Result<LawReport> {
    config.validate()?;
    let start = Instant::now();
    let mut report = LawReport::new(suite.name());
    if category.is_enumerable() {
        let homs = HomTable::build(category, config)?;
        match suite {
            LawSuite::Dagger => dagger_exhaustive(&homs, &mut report),
            LawSuite::Enrichment => enrichment_exhaustive(&homs, &mut report)?,
            LawSuite::MonotoneDagger => monotone_dagger_exhaustive(&homs, &mut report),
            LawSuite::OrderIso => order_iso_exhaustive(&homs, &mut report),
        }
    } else {
        let seed = config.seed.ok_or_else(|| {
            Error::Config(format!("suite `{suite}` on {category} is randomized and needs a seed"))
        })?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sizes: Vec<usize> = config.sizes.iter().copied().filter(|&n| n > 0).collect();
        if sizes.is_empty() {
            return Err(Error::Config("dstoch suites need a positive object size".into()));
        }
        let tol = config.tolerance;
        for _ in 0..config.trials {
            let n = sizes[rng.gen_range(0..sizes.len())];
            match suite {
                LawSuite::Dagger => dagger_sample(n, tol, &mut rng, &mut report),
                LawSuite::Enrichment => enrichment_sample(n, tol, &mut rng, &mut report),
                LawSuite::MonotoneDagger => monotone_dagger_sample(n, tol, &mut rng, &mut report),
                LawSuite::OrderIso => order_iso_sample(n, tol, &mut rng, &mut report),
            }
        }
    }
    report.elapsed = start.elapsed();
    Ok(report)
}

/// Every hom-set between the configured objects.
struct HomTable {
    category: Category,
    objects: Vec<FinObject>,
    homs: BTreeMap<(usize, usize), Vec<Morphism>>,
}

impl HomTable {
    fn build(category: Category, config: &LawConfig) -> Result<Self> {
        let objects: Vec<FinObject> = config.sizes.iter().map(|&n| FinObject::new(n)).collect();
        let mut homs = BTreeMap::new();
        for (i, x) in objects.iter().enumerate() {
            for (j, y) in objects.iter().enumerate() {
                homs.insert((i, j), enumerate_homs(category, x, y, config.enum_cap)?);
            }
        }
        Ok(HomTable {
            category,
            objects,
            homs,
        })
    }

    fn hom(&self, i: usize, j: usize) -> &[Morphism] {
        &self.homs[&(i, j)]
    }

    fn space(&self, i: usize, j: usize) -> HomSpace {
        HomSpace::new(self.category, self.objects[i].clone(), self.objects[j].clone())
            .expect("enumerable categories accept any shape")
    }

    fn indices(&self) -> std::ops::Range<usize> {
        0..self.objects.len()
    }
}

/// ⊥ = c₀ ⊑ c₁ ⊑ … ⊑ cₖ = f, adding one pair of the graph at a time.
pub fn prefix_chain(f: &Morphism) -> Vec<Morphism> {
    let (src, dst) = (f.src().clone(), f.dst().clone());
    match f {
        Morphism::Rel(r) => {
            let pairs: Vec<_> = r.pairs().collect();
            (0..=pairs.len())
                .map(|k| {
                    RelMorphism::from_pairs(src.clone(), dst.clone(), pairs[..k].iter().copied())
                        .expect("sub-relation of a valid relation")
                        .into()
                })
                .collect()
        }
        Morphism::PInj(p) => {
            let pairs: Vec<_> = p.pairs().collect();
            (0..=pairs.len())
                .map(|k| {
                    PInjMorphism::from_pairs(src.clone(), dst.clone(), pairs[..k].iter().copied())
                        .expect("restriction of a valid partial injection")
                        .into()
                })
                .collect()
        }
        Morphism::Stoch(s) => scaled_chain(s, 8),
    }
}

/// 0 ⊑ A/k ⊑ 2A/k ⊑ … ⊑ A.
fn scaled_chain(s: &StochMorphism, steps: usize) -> Vec<Morphism> {
    (0..=steps)
        .map(|k| s.scaled(k as f64 / steps as f64).into())
        .collect()
}

fn w(items: &[(&str, &Morphism)]) -> Vec<String> {
    items.iter().map(|(name, m)| format!("{name}={m}")).collect()
}

fn dagger_exhaustive(homs: &HomTable, report: &mut LawReport) {
    for (i, x) in homs.objects.iter().enumerate() {
        let id = Morphism::identity(homs.category, x.clone());
        report.check("identity", id.dagger() == id, || w(&[("id", &id)]));
        for j in homs.indices() {
            for f in homs.hom(i, j) {
                let d = f.dagger();
                report.check("swaps-objects", d.src() == f.dst() && d.dst() == f.src(), || {
                    w(&[("f", f)])
                });
                report.check("involution", d.dagger() == *f, || w(&[("f", f)]));
            }
        }
    }
    for i in homs.indices() {
        for j in homs.indices() {
            for k in homs.indices() {
                for f in homs.hom(i, j) {
                    let fd = f.dagger();
                    for g in homs.hom(j, k) {
                        let lhs = g.after(f).expect("composable by construction").dagger();
                        let rhs = fd.after(&g.dagger()).expect("composable by construction");
                        report.check("contravariance", lhs == rhs, || w(&[("f", f), ("g", g)]));
                    }
                }
            }
        }
    }
}

fn enrichment_exhaustive(homs: &HomTable, report: &mut LawReport) -> Result<()> {
    let cat = homs.category;
    for i in homs.indices() {
        for j in homs.indices() {
            let fs = homs.hom(i, j);
            let space_ij = homs.space(i, j);
            let ordered: Vec<(&Morphism, &Morphism)> = fs
                .iter()
                .flat_map(|a| fs.iter().map(move |b| (a, b)))
                .filter(|(a, b)| a.leq(b).unwrap_or(false))
                .collect();
            let chains: Vec<(&Morphism, Vec<Morphism>)> =
                fs.iter().map(|f| (f, prefix_chain(f))).collect();
            for k in homs.indices() {
                let (x, y, z) = (&homs.objects[i], &homs.objects[j], &homs.objects[k]);
                let bot_yz = Morphism::bottom(cat, y.clone(), z.clone())?;
                let bot_xz = Morphism::bottom(cat, x.clone(), z.clone())?;
                let bot_zx = Morphism::bottom(cat, z.clone(), x.clone())?;
                let bot_zy = Morphism::bottom(cat, z.clone(), y.clone())?;
                for f in fs {
                    report.check("strict-left", bot_yz.after(f)? == bot_xz, || w(&[("f", f)]));
                    report.check("strict-right", f.after(&bot_zx)? == bot_zy, || w(&[("f", f)]));
                }
                let gs = homs.hom(j, k);
                let space_ik = homs.space(i, k);
                for g in gs {
                    for (a, b) in &ordered {
                        let holds = g.after(a)?.leq(&g.after(b)?)?;
                        report.check("monotone-post", holds, || w(&[("f", a), ("f'", b), ("g", g)]));
                    }
                    for (f, chain) in &chains {
                        let image: Vec<Morphism> =
                            chain.iter().map(|c| g.after(c)).collect::<Result<_>>()?;
                        let holds = g.after(&space_ij.sup_of_chain(chain))? == space_ik.sup_of_chain(&image);
                        report.check("continuous-post", holds, || w(&[("f", f), ("g", g)]));
                    }
                }
                // Precomposition: h ∘ − for h: Z -> X lands in C(Z, Y).
                let space_kj = homs.space(k, j);
                for h in homs.hom(k, i) {
                    for (a, b) in &ordered {
                        let holds = a.after(h)?.leq(&b.after(h)?)?;
                        report.check("monotone-pre", holds, || w(&[("f", a), ("f'", b), ("h", h)]));
                    }
                    for (f, chain) in &chains {
                        let image: Vec<Morphism> =
                            chain.iter().map(|c| c.after(h)).collect::<Result<_>>()?;
                        let holds = space_ij.sup_of_chain(chain).after(h)? == space_kj.sup_of_chain(&image);
                        report.check("continuous-pre", holds, || w(&[("f", f), ("h", h)]));
                    }
                }
            }
        }
    }
    Ok(())
}

fn monotone_dagger_exhaustive(homs: &HomTable, report: &mut LawReport) {
    for i in homs.indices() {
        for j in homs.indices() {
            let fs = homs.hom(i, j);
            let daggers: Vec<Morphism> = fs.iter().map(Morphism::dagger).collect();
            for (a, ad) in fs.iter().zip(&daggers) {
                for (b, bd) in fs.iter().zip(&daggers) {
                    if a.leq(b).unwrap_or(false) {
                        let holds = ad.leq(bd).unwrap_or(false);
                        report.check("monotone", holds, || w(&[("f", a), ("g", b)]));
                    }
                }
            }
        }
    }
}

fn order_iso_exhaustive(homs: &HomTable, report: &mut LawReport) {
    for i in homs.indices() {
        for j in homs.indices() {
            let fs = homs.hom(i, j);
            let space = homs.space(i, j);
            let flipped = space.flipped();
            let bot = space.bottom();
            report.check("strict", bot.dagger() == flipped.bottom(), || w(&[("bottom", &bot)]));
            let daggers: Vec<Morphism> = fs.iter().map(Morphism::dagger).collect();
            for (a, ad) in fs.iter().zip(&daggers) {
                for (b, bd) in fs.iter().zip(&daggers) {
                    let before = a.leq(b).unwrap_or(false);
                    let after = ad.leq(bd).unwrap_or(false);
                    report.check("order-iso", before == after, || w(&[("f", a), ("g", b)]));
                }
                let chain = prefix_chain(a);
                let daggered: Vec<Morphism> = chain.iter().map(Morphism::dagger).collect();
                let holds = space.sup_of_chain(&chain).dagger() == flipped.sup_of_chain(&daggered);
                report.check("continuous", holds, || w(&[("f", a)]));
            }
        }
    }
}

fn dagger_sample(n: usize, tol: f64, rng: &mut ChaCha8Rng, report: &mut LawReport) {
    let f: Morphism = random_stoch(n, rng).into();
    let g: Morphism = random_stoch(n, rng).into();
    let id = Morphism::identity(Category::DStoch, FinObject::new(n));
    report.check("identity", id.dagger().approx_eq(&id, tol), || w(&[("id", &id)]));
    report.check("involution", f.dagger().dagger().approx_eq(&f, tol), || w(&[("f", &f)]));
    let lhs = g.after(&f).expect("square").dagger();
    let rhs = f.dagger().after(&g.dagger()).expect("square");
    report.check("contravariance", lhs.approx_eq(&rhs, tol), || w(&[("f", &f), ("g", &g)]));
    let gf = g.after(&f).expect("square");
    let stays = gf.as_stoch().is_some_and(|s| s.is_subnormalized(tol));
    report.check("closed-under-compose", stays, || w(&[("f", &f), ("g", &g)]));
}

fn enrichment_sample(n: usize, tol: f64, rng: &mut ChaCha8Rng, report: &mut LawReport) {
    let obj = FinObject::new(n);
    let bot: Morphism = StochMorphism::zero(obj.clone(), obj).into();
    let upper = random_stoch(n, rng);
    let lower: Morphism = random_stoch_below(&upper, rng).into();
    let upper: Morphism = upper.into();
    let g: Morphism = random_stoch(n, rng).into();
    let c = |m: Result<Morphism>| m.expect("square");
    report.check("strict-left", c(bot.after(&g)).approx_eq(&bot, tol), || w(&[("f", &g)]));
    report.check("strict-right", c(g.after(&bot)).approx_eq(&bot, tol), || w(&[("f", &g)]));
    let post = c(g.after(&lower)).leq_within(&c(g.after(&upper)), tol).unwrap_or(false);
    report.check("monotone-post", post, || w(&[("f", &lower), ("f'", &upper), ("g", &g)]));
    let pre = c(lower.after(&g)).leq_within(&c(upper.after(&g)), tol).unwrap_or(false);
    report.check("monotone-pre", pre, || w(&[("f", &lower), ("f'", &upper), ("h", &g)]));
    let space = upper.hom_space();
    let chain = prefix_chain(&upper);
    let post_image: Vec<Morphism> = chain.iter().map(|m| c(g.after(m))).collect();
    let holds = c(g.after(&space.sup_of_chain(&chain))).approx_eq(&space.sup_of_chain(&post_image), tol);
    report.check("continuous-post", holds, || w(&[("f", &upper), ("g", &g)]));
    let pre_image: Vec<Morphism> = chain.iter().map(|m| c(m.after(&g))).collect();
    let holds = c(space.sup_of_chain(&chain).after(&g)).approx_eq(&space.sup_of_chain(&pre_image), tol);
    report.check("continuous-pre", holds, || w(&[("f", &upper), ("h", &g)]));
}

fn monotone_dagger_sample(n: usize, tol: f64, rng: &mut ChaCha8Rng, report: &mut LawReport) {
    let upper = random_stoch(n, rng);
    let lower: Morphism = random_stoch_below(&upper, rng).into();
    let upper: Morphism = upper.into();
    let holds = lower.dagger().leq_within(&upper.dagger(), tol).unwrap_or(false);
    report.check("monotone", holds, || w(&[("f", &lower), ("g", &upper)]));
}

fn order_iso_sample(n: usize, tol: f64, rng: &mut ChaCha8Rng, report: &mut LawReport) {
    let g = random_stoch(n, rng);
    // Half the pairs are ordered by construction, half are arbitrary.
    let f: Morphism = if rng.gen_bool(0.5) {
        random_stoch_below(&g, rng).into()
    } else {
        random_stoch(n, rng).into()
    };
    let g: Morphism = g.into();
    let before = f.leq_within(&g, tol).unwrap_or(false);
    let after = f.dagger().leq_within(&g.dagger(), tol).unwrap_or(false);
    report.check("order-iso", before == after, || w(&[("f", &f), ("g", &g)]));
    let space = g.hom_space();
    let bot = space.bottom();
    report.check("strict", bot.dagger().approx_eq(&space.flipped().bottom(), tol), || {
        w(&[("bottom", &bot)])
    });
    let chain = prefix_chain(&g);
    let daggered: Vec<Morphism> = chain.iter().map(Morphism::dagger).collect();
    let holds = space
        .sup_of_chain(&chain)
        .dagger()
        .approx_eq(&space.flipped().sup_of_chain(&daggered), tol);
    report.check("continuous", holds, || w(&[("f", &g)]));
}
