use std::collections::BTreeSet;

use dualdag_core::dagcat::{enumerate_homs, Category, FinObject, HomSpace, Morphism, RelMorphism, StochMorphism};
use dualdag_core::functionals::{
    check_conj_preservation, check_fixed_point_adjoint, check_parametrized, check_pfix_adjoint, conj_by_definition,
    fix_functional, functional_from_json, pfix_functional, random_fixed_point_adjoint_suite,
    random_parametrized_suite, Functional, FunctionalExpr, HostFn, ParamExpr, ParamFunctionalExpr,
    RandomSuiteConfig,
};
use dualdag_core::order::{kleene_fix, FixPolicy};
use dualdag_core::Error;

fn rel(n: usize, pairs: &[(usize, usize)]) -> Morphism {
    RelMorphism::from_pairs(FinObject::new(n), FinObject::new(n), pairs.iter().copied())
        .unwrap()
        .into()
}

fn rel_space(n: usize) -> HomSpace {
    HomSpace::new(Category::Rel, n, n).unwrap()
}

/// Pairs (x, z) with a non-empty path x -> … -> z, by depth-first search.
fn reachability(n: usize, edges: &[(usize, usize)]) -> BTreeSet<(usize, usize)> {
    let mut out = BTreeSet::new();
    for start in 0..n {
        let mut stack: Vec<usize> = edges.iter().filter(|e| e.0 == start).map(|e| e.1).collect();
        let mut seen = BTreeSet::new();
        while let Some(v) = stack.pop() {
            if seen.insert(v) {
                out.insert((start, v));
                stack.extend(edges.iter().filter(|e| e.0 == v).map(|e| e.1));
            }
        }
    }
    out
}

fn pairs(m: &Morphism) -> BTreeSet<(usize, usize)> {
    m.as_rel().unwrap().pairs().collect()
}

fn closure_functional(edges: &[(usize, usize)], n: usize) -> FunctionalExpr {
    let r = rel(n, edges);
    let body = Functional::seq(Functional::PostCompose(r.clone()), Functional::JoinWith(r));
    FunctionalExpr::endo(rel_space(n), body).unwrap()
}

#[test]
fn transitive_closure_matches_reachability_and_its_converse() {
    let edges = [(0, 1), (1, 2)];
    let phi = closure_functional(&edges, 3);
    let fixed = fix_functional(&phi, &FixPolicy::exact()).unwrap().value;
    let oracle = reachability(3, &edges);
    assert_eq!(pairs(&fixed), oracle);
    assert_eq!(oracle, BTreeSet::from([(0, 1), (1, 2), (0, 2)]));

    let conj_fixed = fix_functional(&phi.conj(), &FixPolicy::exact()).unwrap().value;
    let converse: BTreeSet<_> = oracle.iter().map(|&(a, b)| (b, a)).collect();
    assert_eq!(pairs(&conj_fixed), converse);
    assert!(check_fixed_point_adjoint(&phi, &FixPolicy::exact()).unwrap().passed());
}

#[test]
fn closure_on_every_graph_of_three_nodes() {
    let space = rel_space(3);
    for r in enumerate_homs(Category::Rel, space.src(), space.dst(), 9).unwrap() {
        let edges: Vec<_> = pairs(&r).into_iter().collect();
        let phi = closure_functional(&edges, 3);
        let fixed = fix_functional(&phi, &FixPolicy::exact()).unwrap().value;
        assert_eq!(pairs(&fixed), reachability(3, &edges));
        let conj_fixed = fix_functional(&phi.conj(), &FixPolicy::exact()).unwrap().value;
        assert_eq!(conj_fixed, fixed.dagger());
    }
}

#[test]
fn closure_document_loads() {
    let text = r#"{"op":"joinwith","m":{"type":"rel","src":3,"dst":3,"pairs":[[0,1],[1,2]]},
                  "inner":{"op":"postcompose","m":{"type":"rel","src":3,"dst":3,"pairs":[[0,1],[1,2]]}}}"#;
    let phi = functional_from_json(text).unwrap();
    let fixed = fix_functional(&phi, &FixPolicy::exact()).unwrap().value;
    assert_eq!(pairs(&fixed), BTreeSet::from([(0, 1), (1, 2), (0, 2)]));
}

#[test]
fn trivial_fixed_points() {
    let m = rel(2, &[(0, 1)]);
    let constant = FunctionalExpr::endo(rel_space(2), Functional::Const(m.clone())).unwrap();
    assert_eq!(fix_functional(&constant, &FixPolicy::exact()).unwrap().value, m);
    assert_eq!(fix_functional(&constant.conj(), &FixPolicy::exact()).unwrap().value, m.dagger());
    let identity = FunctionalExpr::endo(rel_space(2), Functional::Identity).unwrap();
    assert_eq!(fix_functional(&identity, &FixPolicy::exact()).unwrap().value, rel(2, &[]));
}

#[test]
fn apply_examples() {
    let post = FunctionalExpr::endo(rel_space(3), Functional::PostCompose(rel(3, &[(1, 2)]))).unwrap();
    assert_eq!(post.apply(&rel(3, &[(0, 1)])).unwrap(), rel(3, &[(0, 2)]));
    let dagger = FunctionalExpr::endo(rel_space(3), Functional::Dagger).unwrap();
    assert_eq!(dagger.apply(&rel(3, &[(0, 1)])).unwrap(), rel(3, &[(1, 0)]));
    let wrong = rel(2, &[]);
    assert!(matches!(post.apply(&wrong), Err(Error::DimensionMismatch(_))));
}

#[test]
fn conjugates_agree_with_the_definition_pointwise() {
    let space = rel_space(2);
    let homs = enumerate_homs(Category::Rel, space.src(), space.dst(), 9).unwrap();
    for g in &homs {
        let post = FunctionalExpr::endo(space.clone(), Functional::PostCompose(g.clone())).unwrap();
        let pre = FunctionalExpr::endo(space.clone(), Functional::PreCompose(g.dagger())).unwrap();
        let seq = FunctionalExpr::endo(
            space.clone(),
            Functional::seq(Functional::PostCompose(g.clone()), Functional::JoinWith(g.clone())),
        )
        .unwrap();
        let host = HostFn::new("complement", space.clone(), space.clone(), |h| {
            Ok(h.as_rel().unwrap().complement().into())
        });
        let host = FunctionalExpr::endo(space.clone(), Functional::Host(host)).unwrap();
        for h in &homs {
            // (g ∘ h†)† = h ∘ g†
            assert_eq!(post.conj().apply(h).unwrap(), pre.apply(h).unwrap());
            for phi in [&post, &seq, &host] {
                assert_eq!(phi.conj().apply(h).unwrap(), conj_by_definition(phi, h).unwrap());
                assert_eq!(phi.conj().conj().apply(h).unwrap(), phi.apply(h).unwrap());
            }
        }
    }
}

#[test]
fn random_trees_are_fixed_point_adjoint_to_their_conjugates() {
    for cat in [Category::Rel, Category::PInj] {
        let report =
            random_fixed_point_adjoint_suite(cat, &RandomSuiteConfig::new(100, 17), &FixPolicy::exact()).unwrap();
        assert!(report.passed(), "{cat}: {:?}", report.violations);
        assert_eq!(report.checked, 100);
    }
}

#[test]
fn random_suites_are_deterministic() {
    let run = || {
        let r = random_fixed_point_adjoint_suite(Category::PInj, &RandomSuiteConfig::new(40, 3), &FixPolicy::exact())
            .unwrap();
        serde_json::to_string(&r).unwrap()
    };
    assert_eq!(run(), run());
}

fn reach_param(r_prime: &Morphism) -> ParamFunctionalExpr {
    let body = ParamExpr::join(ParamExpr::ArgP, ParamExpr::compose(ParamExpr::Const(r_prime.clone()), ParamExpr::ArgX));
    ParamFunctionalExpr::new(r_prime.hom_space(), r_prime.hom_space(), body).unwrap()
}

#[test]
fn pfix_of_reach_functional_matches_iteration_oracle() {
    let r_prime = rel(3, &[(1, 2)]);
    let psi = reach_param(&r_prime);
    let p = rel(3, &[(0, 1)]);
    let fixed = pfix_functional(&psi, &p, &FixPolicy::exact()).unwrap().value;
    // Iterate R ↦ P ∪ r'∘R from ∅ by hand on pair sets.
    let mut current: BTreeSet<(usize, usize)> = BTreeSet::new();
    loop {
        let mut next: BTreeSet<_> = [(0, 1)].into_iter().collect();
        for &(x, y) in &current {
            if y == 1 {
                next.insert((x, 2));
            }
        }
        if next == current {
            break;
        }
        current = next;
    }
    assert_eq!(pairs(&fixed), current);
    assert_eq!(current, BTreeSet::from([(0, 1), (0, 2)]));
}

#[test]
fn reach_functional_satisfies_all_parametrized_identities() {
    let psi = reach_param(&rel(2, &[(1, 0)]));
    let report = check_pfix_adjoint(&psi, &FixPolicy::exact()).unwrap();
    assert!(report.passed());
    assert_eq!(report.count("pfix-rev"), 16);
    let report = check_conj_preservation(&psi, &FixPolicy::exact()).unwrap();
    assert!(report.passed());
    assert_eq!(report.count("conj-preservation"), 16);
    let report = check_parametrized(&psi, &FixPolicy::exact()).unwrap();
    assert!(report.passed());
    assert_eq!(report.checked, 48);
}

#[test]
fn projection_pfix_is_the_parameter() {
    let space = rel_space(2);
    let psi = ParamFunctionalExpr::new(space.clone(), space.clone(), ParamExpr::ArgP).unwrap();
    for p in enumerate_homs(Category::Rel, space.src(), space.dst(), 9).unwrap() {
        let run = pfix_functional(&psi, &p, &FixPolicy::exact()).unwrap();
        assert_eq!(run.value, p);
        assert!(run.iterations <= 2);
    }
    assert!(check_parametrized(&psi, &FixPolicy::exact()).unwrap().passed());
}

#[test]
fn pfix_ignoring_parameter_is_ordinary_fix() {
    let r = rel(3, &[(0, 1), (1, 2), (2, 0)]);
    let body = ParamExpr::join(
        ParamExpr::Const(r.clone()),
        ParamExpr::map(Functional::PostCompose(r.clone()), ParamExpr::ArgX),
    );
    let p_space = HomSpace::new(Category::Rel, 2, 1).unwrap();
    let psi = ParamFunctionalExpr::new(rel_space(3), p_space.clone(), body).unwrap();
    let phi = closure_functional(&[(0, 1), (1, 2), (2, 0)], 3);
    let fixed = fix_functional(&phi, &FixPolicy::exact()).unwrap().value;
    for p in enumerate_homs(Category::Rel, p_space.src(), p_space.dst(), 9).unwrap() {
        assert_eq!(pfix_functional(&psi, &p, &FixPolicy::exact()).unwrap().value, fixed);
    }
}

#[test]
fn random_parametrized_trees_satisfy_all_identities() {
    let p_space = rel_space(2);
    let mut config = RandomSuiteConfig::new(100, 29);
    config.tree.max_size = 2;
    let report = random_parametrized_suite(&p_space, &config, &FixPolicy::exact()).unwrap();
    assert!(report.passed(), "{:?}", report.violations);
    assert_eq!(report.skipped, 0);
    assert_eq!(report.count("pfix-rev"), 1600);
    assert_eq!(report.count("pfix-identity"), 1600);
    assert_eq!(report.count("conj-preservation"), 1600);
}

#[test]
fn affine_stochastic_fixed_point_is_one_half() {
    let one = || FinObject::new(1);
    let half = StochMorphism::new(one(), one(), vec![vec![0.5]]).unwrap();
    let quarter = StochMorphism::new(one(), one(), vec![vec![0.25]]).unwrap();
    let space = HomSpace::new(Category::DStoch, 1, 1).unwrap();
    let body = Functional::seq(Functional::PostCompose(half.into()), Functional::AddWith(quarter.into()));
    let phi = FunctionalExpr::endo(space.clone(), body).unwrap();
    let policy = FixPolicy::metric(1e-9).with_max_iterations(64);
    let run = fix_functional(&phi, &policy).unwrap();
    let value = run.value.as_stoch().unwrap().get(0, 0);
    assert!((value - 0.5).abs() < 1e-9, "{value}");
    assert!(run.iterations <= 64);

    // The same iteration by hand: a ↦ 0.25 + 0.5a from 0.
    let oracle = kleene_fix(|a: &f64| Ok(0.25 + 0.5 * a), &UnitInterval, &policy).unwrap();
    assert!((oracle.value - value).abs() < 1e-12);
    assert!(check_fixed_point_adjoint(&phi, &policy).unwrap().passed());
}

struct UnitInterval;

impl dualdag_core::order::HomDomain for UnitInterval {
    type Elem = f64;
    fn bottom(&self) -> f64 {
        0.0
    }
    fn leq(&self, a: &f64, b: &f64) -> bool {
        a <= b
    }
    fn sup_of_chain(&self, chain: &[f64]) -> f64 {
        chain.iter().copied().fold(0.0, f64::max)
    }
    fn contains(&self, a: &f64) -> bool {
        (0.0..=1.0).contains(a)
    }
    fn distance(&self, a: &f64, b: &f64) -> Option<f64> {
        Some((a - b).abs())
    }
}

#[test]
fn joins_are_unsupported_in_dstoch_functionals() {
    let space = HomSpace::new(Category::DStoch, 2, 2).unwrap();
    let zero = StochMorphism::zero(FinObject::new(2), FinObject::new(2));
    let err = FunctionalExpr::endo(space, Functional::JoinWith(zero.into())).unwrap_err();
    assert!(matches!(err, Error::Unsupported { .. }));
}
