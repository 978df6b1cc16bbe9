//! Seeded random DSL trees and the randomized theorem suites built on them.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::expr::{Functional, FunctionalExpr};
use super::fixpoint::{fixed_point_adjoint_into, parametrized_into};
use super::param::{ParamExpr, ParamFunctionalExpr};
use crate::dagcat::random::random_morphism;
use crate::dagcat::{enumerate_homs, Category, FinObject, HomSpace, Morphism, DEFAULT_ENUM_CAP};
use crate::error::{Error, Result};
use crate::order::FixPolicy;
use crate::report::LawReport;

#[derive(Debug, Clone, PartialEq)]
pub struct TreeConfig {
    pub max_depth: usize,
    /// Largest object size used for leaves and intermediate hom-sets.
    pub max_size: usize,
}

impl Default for TreeConfig {
    fn default() -> Self {
        TreeConfig {
            max_depth: 4,
            max_size: 3,
        }
    }
}

/// Generates well-typed functional trees. Morphism leaves are drawn uniformly
/// from the enumerated hom-set when it is small enough to enumerate.
pub struct TreeGen {
    rng: ChaCha8Rng,
    config: TreeConfig,
    homs: HashMap<HomSpace, Vec<Morphism>>,
}

impl TreeGen {
    pub fn new(seed: u64, config: TreeConfig) -> Self {
        TreeGen {
            rng: ChaCha8Rng::seed_from_u64(seed),
            config,
            homs: HashMap::new(),
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn sample(&mut self, space: &HomSpace) -> Morphism {
        if space.category().is_enumerable() && space.cells() <= DEFAULT_ENUM_CAP {
            let homs = self.homs.entry(space.clone()).or_insert_with(|| {
                enumerate_homs(space.category(), space.src(), space.dst(), DEFAULT_ENUM_CAP)
                    .expect("size checked against the cap")
            });
            return homs.choose(&mut self.rng).expect("hom-sets are never empty").clone();
        }
        random_morphism(space, &mut self.rng)
    }

    fn object(&mut self) -> FinObject {
        FinObject::new(self.rng.gen_range(1..=self.config.max_size.max(1)))
    }

    pub fn space(&mut self, category: Category) -> HomSpace {
        let x = self.object();
        let y = if category == Category::DStoch { x.clone() } else { self.object() };
        HomSpace::new(category, x, y).expect("dstoch spaces are square")
    }

    fn intermediate(&mut self, dom: &HomSpace, cod: &HomSpace) -> HomSpace {
        let fresh = self.space(dom.category());
        [dom.clone(), cod.clone(), dom.flipped(), cod.flipped(), fresh]
            .choose(&mut self.rng)
            .expect("non-empty")
            .clone()
    }

    /// A functional `dom -> cod` of depth at most `depth`.
    pub fn functional(&mut self, dom: &HomSpace, cod: &HomSpace, depth: usize) -> Functional {
        let joins = dom.category() != Category::DStoch;
        if depth > 0 && self.rng.gen_bool(0.6) {
            if joins && self.rng.gen_bool(0.4) {
                let left = self.functional(dom, cod, depth - 1);
                let right = self.functional(dom, cod, depth - 1);
                return Functional::join_of(left, right);
            }
            let mid = self.intermediate(dom, cod);
            let first = self.functional(dom, &mid, depth - 1);
            let then = self.functional(&mid, cod, depth - 1);
            return Functional::seq(first, then);
        }
        self.leaf(dom, cod)
    }

    fn leaf(&mut self, dom: &HomSpace, cod: &HomSpace) -> Functional {
        let cat = dom.category();
        let mut options = vec![0u8];
        if dom == cod {
            options.extend([1, 1]);
            if cat != Category::DStoch {
                options.extend([2, 2]);
            }
        }
        if dom.flipped() == *cod {
            options.extend([3, 3]);
        }
        if dom.dst() == cod.dst() {
            options.extend([4, 4]);
        }
        if dom.src() == cod.src() {
            options.extend([5, 5]);
        }
        let hom = |src: &FinObject, dst: &FinObject| {
            HomSpace::new(cat, src.clone(), dst.clone()).expect("square when the category requires it")
        };
        match *options.choose(&mut self.rng).expect("const is always possible") {
            1 => Functional::Identity,
            2 => Functional::JoinWith(self.sample(cod)),
            3 => Functional::Dagger,
            4 => Functional::PreCompose(self.sample(&hom(cod.src(), dom.src()))),
            5 => Functional::PostCompose(self.sample(&hom(dom.dst(), cod.dst()))),
            _ => Functional::Const(self.sample(cod)),
        }
    }

    /// A random endo-functional on a random hom-set of `category`.
    pub fn endo_functional(&mut self, category: Category) -> FunctionalExpr {
        let space = self.space(category);
        let body = self.functional(&space, &space, self.config.max_depth);
        FunctionalExpr::endo(space, body).expect("generated trees are well typed")
    }

    /// A random ψ : x_space × p_space -> x_space.
    pub fn param_functional(&mut self, x_space: &HomSpace, p_space: &HomSpace) -> ParamFunctionalExpr {
        let body = self.param(x_space, p_space, x_space, self.config.max_depth);
        ParamFunctionalExpr::new(x_space.clone(), p_space.clone(), body)
            .expect("generated trees are well typed")
    }

    fn param(&mut self, xs: &HomSpace, ps: &HomSpace, cod: &HomSpace, depth: usize) -> ParamExpr {
        let cat = cod.category();
        if depth > 0 && self.rng.gen_bool(0.6) {
            match self.rng.gen_range(0..3) {
                0 => {
                    let mid = [xs.clone(), ps.clone(), xs.flipped(), ps.flipped(), cod.clone()]
                        .choose(&mut self.rng)
                        .expect("non-empty")
                        .clone();
                    let f = self.functional(&mid, cod, depth - 1);
                    let arg = self.param(xs, ps, &mid, depth - 1);
                    return ParamExpr::map(f, arg);
                }
                1 if cat != Category::DStoch => {
                    let a = self.param(xs, ps, cod, depth - 1);
                    let b = self.param(xs, ps, cod, depth - 1);
                    return ParamExpr::join(a, b);
                }
                _ => {
                    let via = if cat == Category::DStoch { cod.src().clone() } else { self.object() };
                    let after_space = HomSpace::new(cat, via.clone(), cod.dst().clone()).expect("square");
                    let before_space = HomSpace::new(cat, cod.src().clone(), via).expect("square");
                    let after = self.param(xs, ps, &after_space, depth - 1);
                    let before = self.param(xs, ps, &before_space, depth - 1);
                    return ParamExpr::compose(after, before);
                }
            }
        }
        let mut options = vec![0u8];
        if cod == xs {
            options.extend([1, 1, 1]);
        }
        if cod == ps {
            options.extend([2, 2, 2]);
        }
        match *options.choose(&mut self.rng).expect("const is always possible") {
            1 => ParamExpr::ArgX,
            2 => ParamExpr::ArgP,
            _ => ParamExpr::Const(self.sample(cod)),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RandomSuiteConfig {
    /// Instances that must actually be checked; skipped ones do not count.
    pub trials: usize,
    pub seed: u64,
    pub tree: TreeConfig,
    /// Give up after `trials * max_attempt_factor` generated trees.
    pub max_attempt_factor: usize,
}

impl RandomSuiteConfig {
    pub fn new(trials: usize, seed: u64) -> Self {
        RandomSuiteConfig {
            trials,
            seed,
            tree: TreeConfig::default(),
            max_attempt_factor: 50,
        }
    }

    fn attempts(&self) -> usize {
        self.trials.saturating_mul(self.max_attempt_factor).max(1)
    }
}

fn too_many_skips(trials: usize, checked: u64) -> Error {
    Error::Config(format!(
        "only {checked} of {trials} random instances were defined; raise the attempt budget"
    ))
}

/// fix(conj φ) = (fix φ)† over random endo-functionals of `category`.
/// A tree whose fixed point is undefined on both sides counts as skipped.
pub fn random_fixed_point_adjoint_suite(
    category: Category,
    config: &RandomSuiteConfig,
    policy: &FixPolicy,
) -> Result<LawReport> {
    let mut report = LawReport::new("fixed-point-adjoint");
    let mut gen = TreeGen::new(config.seed, config.tree.clone());
    let mut attempts = 0;
    while report.checked < config.trials as u64 {
        if attempts == config.attempts() {
            return Err(too_many_skips(config.trials, report.checked));
        }
        attempts += 1;
        let phi = gen.endo_functional(category);
        fixed_point_adjoint_into(&mut report, &phi, policy)?;
    }
    Ok(report)
}

/// pfix-rev, the pfix identity and conjugation preservation over random ψ
/// with the recursion space drawn at random and the parameter space fixed.
/// Each tree contributes one instance per parameter and identity.
pub fn random_parametrized_suite(
    p_space: &HomSpace,
    config: &RandomSuiteConfig,
    policy: &FixPolicy,
) -> Result<LawReport> {
    let mut report = LawReport::new("parametrized");
    let mut gen = TreeGen::new(config.seed, config.tree.clone());
    let mut trees = 0;
    let mut attempts = 0;
    while trees < config.trials {
        if attempts == config.attempts() {
            return Err(too_many_skips(config.trials, trees as u64));
        }
        attempts += 1;
        let x_space = gen.space(p_space.category());
        let psi = gen.param_functional(&x_space, p_space);
        let before = report.checked;
        parametrized_into(&mut report, &psi, policy)?;
        if report.checked > before {
            trees += 1;
        }
    }
    Ok(report)
}
