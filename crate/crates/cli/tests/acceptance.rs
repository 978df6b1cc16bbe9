//! End-to-end acceptance run: one `[PASS]`/`[FAIL]` line per criterion.
//!
//! Expected values are recomputed here from first principles (counting
//! formulas, graph search, loop following, hand iteration, Peano arithmetic)
//! rather than read back from the library under test.

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use dualdag_core::dagcat::{
    enumerate_homs, law_suite, Category, FinObject, HomSpace, LawConfig, LawSuite, Morphism, PInjMorphism,
    RelMorphism, StochMorphism,
};
use dualdag_core::functionals::{
    check_dagger_trace, fix_functional, random_fixed_point_adjoint_suite, random_parametrized_suite, trace,
    Functional, FunctionalExpr, FunctorDesc, NaturalFamily, NaturalityHarness, RandomSuiteConfig, TraceCheck,
};
use dualdag_core::order::FixPolicy;
use dualdag_revlang::programs::{self, ADD};
use dualdag_revlang::{
    alpha_equivalent, check_fuel_monotonicity, denote, eval, invert, invert_bindings, parse, roundtrip_check,
    Bindings, MonotonicityConfig, Outcome, RoundtripConfig, Value, DEFAULT_SUFFIX,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = std::result::Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn obj(n: usize) -> FinObject {
    FinObject::new(n)
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn factorial(n: u64) -> u64 {
    (1..=n).product()
}

/// |Rel(m, n)| = 2^(mn).
fn rel_homs(m: u64, n: u64) -> u64 {
    1 << (m * n)
}

/// |PInj(m, n)| = Σ_k C(m,k)·C(n,k)·k!.
fn pinj_homs(m: u64, n: u64) -> u64 {
    (0..=m.min(n)).map(|k| binomial(m, k) * binomial(n, k) * factorial(k)).sum()
}

fn criterion_1() -> Check {
    let start = Instant::now();
    let mut total = 0;
    for cat in [Category::Rel, Category::PInj] {
        for suite in [LawSuite::Dagger, LawSuite::Enrichment] {
            let report = law_suite(cat, suite, &LawConfig::up_to(2)).map_err(|e| e.to_string())?;
            ensure!(report.passed(), "{cat} {suite}: {} violation(s)", report.violation_count);
            ensure!(report.skipped == 0, "{cat} {suite}: {} skipped", report.skipped);
            total += report.checked;
        }
        // Contravariance is checked on every composable pair X → Y → Z.
        let homs = |a, b| if cat == Category::Rel { rel_homs(a, b) } else { pinj_homs(a, b) };
        let expected: u64 =
            (0..=2).flat_map(|x| (0..=2).flat_map(move |y| (0..=2).map(move |z| homs(x, y) * homs(y, z)))).sum();
        let report = law_suite(cat, LawSuite::Dagger, &LawConfig::up_to(2)).map_err(|e| e.to_string())?;
        ensure!(
            report.count("contravariance") == expected,
            "{cat}: contravariance checked {} times, expected {expected}",
            report.count("contravariance")
        );
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(5), "took {elapsed:?}");
    Ok(format!("{total} instances, 0 violations, {:.2} s", elapsed.as_secs_f64()))
}

fn criterion_2() -> Check {
    let rel2 = LawConfig::with_sizes(vec![2]);
    let mono = law_suite(Category::Rel, LawSuite::MonotoneDagger, &rel2).map_err(|e| e.to_string())?;
    ensure!(mono.passed(), "rel monotone-dagger: {:?}", mono.violations);
    // Comparable pairs f ⊑ g of subsets of a 4-element set: each point is in neither, g only, or both.
    ensure!(mono.count("monotone") == 3u64.pow(4), "rel monotone count {}", mono.count("monotone"));
    let iso = law_suite(Category::Rel, LawSuite::OrderIso, &rel2).map_err(|e| e.to_string())?;
    ensure!(iso.passed(), "rel order-iso: {:?}", iso.violations);
    let rel_pairs = rel_homs(2, 2).pow(2);
    ensure!(iso.count("order-iso") == rel_pairs, "rel order-iso count {} != {rel_pairs}", iso.count("order-iso"));
    ensure!(iso.count("continuous") > 0 && iso.count("strict") > 0, "suprema and bottom not checked");

    let pinj3 = LawConfig::with_sizes(vec![3]);
    for suite in [LawSuite::MonotoneDagger, LawSuite::OrderIso] {
        let r = law_suite(Category::PInj, suite, &pinj3).map_err(|e| e.to_string())?;
        ensure!(r.passed(), "pinj {suite}: {:?}", r.violations);
    }
    let iso3 = law_suite(Category::PInj, LawSuite::OrderIso, &pinj3).map_err(|e| e.to_string())?;
    let pinj_pairs = pinj_homs(3, 3).pow(2);
    ensure!(iso3.count("order-iso") == pinj_pairs, "pinj order-iso count {} != {pinj_pairs}", iso3.count("order-iso"));

    // Every ω-chain in Rel(2,2) built by adding one pair at a time from ⊥:
    // the converse of the union is the union of the converses.
    let all: Vec<(usize, usize)> = vec![(0, 0), (0, 1), (1, 0), (1, 1)];
    let mut chains = 0;
    for perm in permutations(&all) {
        let mut sup: BTreeSet<(usize, usize)> = BTreeSet::new();
        let mut sup_of_daggers: BTreeSet<(usize, usize)> = BTreeSet::new();
        for &(a, b) in &perm {
            sup.insert((a, b));
            let step = RelMorphism::from_pairs(obj(2), obj(2), sup.iter().copied()).map_err(|e| e.to_string())?;
            sup_of_daggers.extend(step.converse().pairs());
            let converse_of_sup: BTreeSet<_> = sup.iter().map(|&(x, y)| (y, x)).collect();
            ensure!(converse_of_sup == sup_of_daggers, "chain {perm:?} breaks at {:?}", (a, b));
        }
        chains += 1;
    }
    let bottom = RelMorphism::empty(obj(2), obj(2));
    ensure!(bottom.converse() == bottom, "dagger does not preserve ⊥");
    Ok(format!(
        "rel 2: {rel_pairs} pairs, pinj 3: {pinj_pairs} pairs, {chains} explicit chains, 0 violations"
    ))
}

fn permutations<T: Clone>(items: &[T]) -> Vec<Vec<T>> {
    if items.is_empty() {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head.clone());
            out.push(tail);
        }
    }
    out
}

/// Pairs (x, z) joined by a non-empty path, by depth-first search.
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

fn rel_pairs(m: &Morphism) -> BTreeSet<(usize, usize)> {
    m.as_rel().expect("a relation").pairs().collect()
}

fn criterion_3() -> Check {
    let policy = FixPolicy::exact();
    let mut summary = Vec::new();
    for cat in [Category::Rel, Category::PInj] {
        let config = RandomSuiteConfig::new(100, 3);
        ensure!(config.tree.max_depth <= 4 && config.tree.max_size <= 3, "tree bounds too large");
        let report = random_fixed_point_adjoint_suite(cat, &config, &policy).map_err(|e| e.to_string())?;
        ensure!(report.passed(), "{cat}: {:?}", report.violations);
        ensure!(report.checked == 100, "{cat}: only {} trees checked", report.checked);
        summary.push(format!("{cat} 100 trees"));
    }
    // Transitive closure φ(R) = r ∪ r∘R, on every graph with three nodes.
    let space = HomSpace::new(Category::Rel, 3, 3).map_err(|e| e.to_string())?;
    let graphs = enumerate_homs(Category::Rel, space.src(), space.dst(), 9).map_err(|e| e.to_string())?;
    for r in &graphs {
        let edges: Vec<_> = rel_pairs(r).into_iter().collect();
        let body = Functional::seq(Functional::PostCompose(r.clone()), Functional::JoinWith(r.clone()));
        let phi = FunctionalExpr::endo(space.clone(), body).map_err(|e| e.to_string())?;
        let fixed = fix_functional(&phi, &policy).map_err(|e| e.to_string())?.value;
        let oracle = reachability(3, &edges);
        ensure!(rel_pairs(&fixed) == oracle, "closure of {edges:?}");
        let conj = fix_functional(&phi.conj(), &policy).map_err(|e| e.to_string())?.value;
        let converse: BTreeSet<_> = oracle.iter().map(|&(a, b)| (b, a)).collect();
        ensure!(rel_pairs(&conj) == converse, "conjugate closure of {edges:?}");
    }
    summary.push(format!("closure witness on {} graphs", graphs.len()));
    Ok(summary.join(", "))
}

fn criterion_4() -> Check {
    let p_space = HomSpace::new(Category::Rel, 2, 2).map_err(|e| e.to_string())?;
    let mut config = RandomSuiteConfig::new(100, 4);
    config.tree.max_size = 2;
    let report = random_parametrized_suite(&p_space, &config, &FixPolicy::exact()).map_err(|e| e.to_string())?;
    ensure!(report.passed(), "{:?}", report.violations);
    let per_law = 100 * rel_homs(2, 2);
    for law in ["pfix-rev", "pfix-identity", "conj-preservation"] {
        ensure!(report.count(law) == per_law, "{law} checked {} times, expected {per_law}", report.count(law));
    }
    Ok(format!("100 trees x 16 parameters, {} checks, 0 violations", report.checked))
}

fn criterion_5() -> Check {
    let policy = FixPolicy::exact();
    let mut checked = 0;
    for cat in [Category::Rel, Category::PInj] {
        for functor in [FunctorDesc::Identity, FunctorDesc::DisjointUnionWith(obj(1))] {
            for family in
                [NaturalFamily::join_family(cat, functor.clone()), NaturalFamily::projection_family(cat, functor.clone())]
            {
                let mut harness = NaturalityHarness::new(&family, 10, &policy);
                let report = harness.check_all(&[0, 1, 2]).map_err(|e| e.to_string())?;
                ensure!(report.passed(), "{cat} {} / {functor}: {:?}", family.name, report.violations);
                for law in ["square", "iterate", "pfix"] {
                    ensure!(report.count(law) > 0, "{cat} {} / {functor}: no {law} checks", family.name);
                }
                checked += report.checked;
            }
        }
    }
    Ok(format!("8 family/functor pairs, {checked} squares, 0 violations"))
}

/// Follows x through the loop until it leaves to Y or the orbit repeats.
fn orbit_trace(f: &PInjMorphism, nx: usize, ny: usize) -> BTreeMap<usize, usize> {
    let mut out = BTreeMap::new();
    for x in 0..nx {
        let mut state = f.get(x);
        let mut steps = 0;
        while let Some(t) = state {
            if t < ny {
                out.insert(x, t);
                break;
            }
            steps += 1;
            if steps > f.table().len() {
                break;
            }
            state = f.get(t - ny + nx);
        }
    }
    out
}

fn criterion_6() -> Check {
    let mut checked = 0;
    for u in 0..=2 {
        let report = check_dagger_trace(&TraceCheck::new(Category::PInj, 1, 1, u)).map_err(|e| e.to_string())?;
        ensure!(report.passed(), "pinj U={u}: {:?}", report.violations);
        ensure!(report.count("dagger") == pinj_homs(1 + u as u64, 1 + u as u64), "pinj U={u}: wrong instance count");
        checked += report.checked;
    }
    let report = check_dagger_trace(&TraceCheck::new(Category::Rel, 1, 1, 1)).map_err(|e| e.to_string())?;
    ensure!(report.passed(), "rel (1,1,1): {:?}", report.violations);
    ensure!(report.count("dagger") == rel_homs(2, 2), "rel (1,1,1): wrong instance count");
    checked += report.checked;

    // x ↦ u₀ ↦ u₁ ↦ y: indices x = 0, u₀ = 1, u₁ = 2 on the source side, y = 0 on the target side.
    let f = PInjMorphism::from_pairs(obj(3), obj(3), [(0, 1), (1, 2), (2, 0)]).map_err(|e| e.to_string())?;
    let traced = trace(&f.clone().into(), &obj(1), &obj(1), &obj(2)).map_err(|e| e.to_string())?;
    let got: BTreeMap<_, _> = traced.as_pinj().ok_or("trace left PInj")?.pairs().collect();
    ensure!(got == orbit_trace(&f, 1, 1), "orbit oracle disagrees: {got:?}");
    ensure!(got == BTreeMap::from([(0, 0)]), "orbit example gave {got:?}");
    Ok(format!("{checked} instances, orbit example x ↦ y"))
}

/// A random doubly substochastic matrix and an entrywise-smaller one,
/// drawn here independently of the library's own generator.
fn stoch_pair(n: usize, rng: &mut ChaCha8Rng) -> (Vec<Vec<f64>>, Vec<Vec<f64>>) {
    let raw: Vec<Vec<f64>> = (0..n).map(|_| (0..n).map(|_| rng.gen::<f64>()).collect()).collect();
    let row_max = raw.iter().map(|r| r.iter().sum::<f64>()).fold(0.0, f64::max);
    let col_max = (0..n).map(|c| raw.iter().map(|r| r[c]).sum::<f64>()).fold(0.0, f64::max);
    // Dividing by the largest line sum bounds every row and column sum by one.
    let scale = rng.gen::<f64>() / row_max.max(col_max).max(f64::MIN_POSITIVE);
    let upper: Vec<Vec<f64>> = raw.iter().map(|r| r.iter().map(|x| x * scale).collect()).collect();
    let lower = upper.iter().map(|row| row.iter().map(|x| x * rng.gen::<f64>()).collect()).collect();
    (lower, upper)
}

fn criterion_7() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for i in 0..1000 {
        let n = 1 + i % 4;
        let (lower, upper) = stoch_pair(n, &mut rng);
        let lo = StochMorphism::square(n, lower.clone()).map_err(|e| e.to_string())?;
        let hi = StochMorphism::square(n, upper.clone()).map_err(|e| e.to_string())?;
        ensure!(lo.leq_within(&hi, 1e-9).map_err(|e| e.to_string())?, "pair {i} not ordered");
        let (lt, ut) = (lo.transpose(), hi.transpose());
        for r in 0..n {
            for c in 0..n {
                ensure!((lt.get(c, r) - lower[r][c]).abs() < 1e-12, "pair {i}: transpose moved ({r},{c})");
                ensure!(lt.get(c, r) <= ut.get(c, r) + 1e-9, "pair {i}: order lost at ({c},{r})");
            }
        }
        ensure!(lt.leq_within(&ut, 1e-9).map_err(|e| e.to_string())?, "pair {i}: transposes not ordered");
    }

    // a ↦ 0.25 + 0.5·a from 0, by hand.
    let mut a = 0.0f64;
    let mut hand_steps = 0;
    while (0.5 - a).abs() >= 1e-9 {
        a = 0.25 + 0.5 * a;
        hand_steps += 1;
    }
    let m = |x: f64| -> Result<Morphism, String> {
        Ok(StochMorphism::new(obj(1), obj(1), vec![vec![x]]).map_err(|e| e.to_string())?.into())
    };
    let space = HomSpace::new(Category::DStoch, 1, 1).map_err(|e| e.to_string())?;
    let body = Functional::seq(Functional::PostCompose(m(0.5)?), Functional::AddWith(m(0.25)?));
    let phi = FunctionalExpr::endo(space, body).map_err(|e| e.to_string())?;
    let run = fix_functional(&phi, &FixPolicy::metric(1e-9).with_max_iterations(64)).map_err(|e| e.to_string())?;
    let value = run.value.as_stoch().ok_or("not a stochastic map")?.get(0, 0);
    ensure!((value - 0.5).abs() < 1e-9, "fixed point {value}");
    ensure!((value - a).abs() < 1e-9, "library {value} vs hand iteration {a}");
    ensure!(run.iterations <= 64, "{} iterations", run.iterations);
    Ok(format!(
        "1000 pairs ordered after transpose; affine fixed point {value:.12} in {} iterations (hand: {hand_steps})",
        run.iterations
    ))
}

fn bindings_for(name: &str) -> Bindings {
    programs::default_bindings(name)
}

fn criterion_8() -> Check {
    let mut notes = Vec::new();
    for (name, f, src) in programs::BUNDLED {
        let p = parse(src).map_err(|e| e.to_string())?;
        let b = bindings_for(name);
        let report = roundtrip_check(&p, f, &b, &RoundtripConfig::new(100, 10_000, 8)).map_err(|e| e.to_string())?;
        ensure!(report.passed(), "{name} round trip: {:?}", report.failures);
        ensure!(report.outcomes.defined == 100, "{name}: only {} defined trials", report.outcomes.defined);

        let inv = invert(&p, DEFAULT_SUFFIX);
        let forward = denote(&p, f, &b, 6, 32).map_err(|e| e.to_string())?;
        let backward = denote(&inv, &format!("{f}{DEFAULT_SUFFIX}"), &invert_bindings(&b, DEFAULT_SUFFIX), 6, 32)
            .map_err(|e| e.to_string())?;
        ensure!(forward.defined_count() > 0, "{name}: empty denotation");
        let forward_pairs: BTreeSet<_> = forward.pairs().map(|(x, y)| (y, x)).collect();
        let backward_pairs: BTreeSet<_> = backward.pairs().collect();
        ensure!(forward_pairs == backward_pairs, "{name}: denotation of the inverse is not the converse");

        // Definition names are compared up to renaming, so the doubled suffix does not matter.
        let back = invert(&inv, DEFAULT_SUFFIX);
        ensure!(alpha_equivalent(&back, &p), "{name}: inverting twice is not α-equivalent to the source");

        let mono = check_fuel_monotonicity(
            &p,
            f,
            &b,
            &MonotonicityConfig { pairs: 1000, max_fuel: 40, seed: 8, sampler: None },
        )
        .map_err(|e| e.to_string())?;
        ensure!(mono.passed(), "{name} fuel monotonicity: {:?}", mono.failures);
        ensure!(mono.pairs == 1000, "{name}: {} pairs", mono.pairs);
        notes.push(name);
    }

    // Peano oracle for add: (a, b) ↦ (a, a + b).
    let add = parse(ADD).map_err(|e| e.to_string())?;
    for a in 0..15usize {
        for b in 0..15usize {
            let input = Value::pair(Value::nat(a), Value::nat(b));
            let out = eval(&add, "add", &Bindings::new(), &input, 10_000).map_err(|e| e.to_string())?;
            let expected = Value::pair(Value::nat(a), Value::nat(a + b));
            ensure!(out == Outcome::Value(expected), "add({a}, {b}) gave {out}");
        }
    }
    Ok(format!("{} programs: round trip, denotation, double inversion, fuel monotonicity; add vs Peano", notes.join("/")))
}

fn criterion_9() -> Check {
    let runs: [&[&str]; 3] = [
        &["--format", "json", "laws", "--category", "all", "--suite", "all", "--seed", "9", "--trials", "100"],
        &["--format", "json", "roundtrip", "map", "--seed", "9"],
        &["--format", "json", "fix", concat!(env!("CARGO_MANIFEST_DIR"), "/data/affine.json")],
    ];
    let mut bytes = 0;
    for args in runs {
        let go = || dualdag_cli::run(std::iter::once("dualdag").chain(args.iter().copied()));
        let (a, b) = (go(), go());
        ensure!(a.code == 0, "{args:?} exited {}: {}", a.code, a.stderr);
        ensure!(a.stdout.as_bytes() == b.stdout.as_bytes(), "{args:?} differs between runs");
        bytes += a.stdout.len();
    }
    Ok(format!("3 commands, {bytes} bytes identical across runs"))
}

fn main() {
    let criteria: [(&str, fn() -> Check); 9] = [
        ("dagger and enrichment laws, Rel/PInj sizes ≤ 2", criterion_1),
        ("monotone dagger and order isomorphism", criterion_2),
        ("fixed points of conjugates are daggers of fixed points", criterion_3),
        ("parametrized fixed-point identities", criterion_4),
        ("naturality of join and projection families", criterion_5),
        ("dagger commutes with trace", criterion_6),
        ("substochastic transpose and affine fixed point", criterion_7),
        ("reversible language inversion", criterion_8),
        ("reproducible structured reports", criterion_9),
    ];
    let mut failed = 0;
    for (i, (title, check)) in criteria.iter().enumerate() {
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        match result {
            Ok(detail) => println!("[PASS] criterion {}: {title} — {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] criterion {}: {title} — {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
