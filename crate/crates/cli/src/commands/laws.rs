//! `dualdag laws`: category law suites plus the functional-level suites.

use std::fmt;
use std::fmt::Write as _;
use std::time::Instant;

use dualdag_core::dagcat::{law_suite, Category, FinObject, HomSpace, LawConfig, LawSuite, DEFAULT_ENUM_CAP};
use dualdag_core::functionals::{
    check_dagger_trace, default_policy, random_fixed_point_adjoint_suite, random_parametrized_suite, FunctorDesc,
    NaturalFamily, NaturalityHarness, RandomSuiteConfig, TraceCheck, TreeConfig,
};
use dualdag_core::report::LawReport;
use serde::Serialize;
use serde_json::json;

use crate::args::{Format, LawsArgs};
use crate::error::{exit, CliError, Result};
use crate::{json_line, Context, Output};

/// Fuel used for the iterate squares of the naturality suite.
const NATURALITY_FUEL: usize = 10;
/// Object sizes above this are not used by the exhaustive functional suites.
const FUNCTIONAL_SIZE_CAP: usize = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Suite {
    Category(LawSuite),
    FixedPointAdjoint,
    Parametrized,
    Trace,
    Naturality,
}

impl Suite {
    const ALL: [Suite; 8] = [
        Suite::Category(LawSuite::Dagger),
        Suite::Category(LawSuite::Enrichment),
        Suite::Category(LawSuite::MonotoneDagger),
        Suite::Category(LawSuite::OrderIso),
        Suite::FixedPointAdjoint,
        Suite::Parametrized,
        Suite::Trace,
        Suite::Naturality,
    ];

    fn name(self) -> &'static str {
        match self {
            Suite::Category(s) => s.name(),
            Suite::FixedPointAdjoint => "fixed-point-adjoint",
            Suite::Parametrized => "parametrized",
            Suite::Trace => "trace",
            Suite::Naturality => "naturality",
        }
    }

    fn parse(s: &str) -> Result<Vec<Suite>> {
        if s == "all" {
            return Ok(Suite::ALL.to_vec());
        }
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .map(|suite| vec![suite])
            .ok_or_else(|| {
                let names: Vec<_> = Suite::ALL.iter().map(|s| s.name()).collect();
                CliError::Config(format!("unknown suite `{s}` (expected one of {}, or all)", names.join(", ")))
            })
    }

    fn applies_to(self, category: Category) -> bool {
        match self {
            Suite::Parametrized | Suite::Trace | Suite::Naturality => category.is_enumerable(),
            _ => true,
        }
    }

    fn is_randomized(self, category: Category) -> bool {
        match self {
            Suite::Category(_) => !category.is_enumerable(),
            Suite::FixedPointAdjoint | Suite::Parametrized => true,
            Suite::Trace | Suite::Naturality => false,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

struct Plan {
    runs: Vec<(Category, Suite)>,
    sizes: Vec<usize>,
    trials: usize,
    seed: Option<u64>,
    tolerance: f64,
    enum_cap: usize,
}

fn plan(ctx: &Context, a: &LawsArgs) -> Result<Plan> {
    let file = &ctx.file;
    let categories = if a.category.is_empty() { file.category.clone().unwrap_or_default() } else { a.category.clone() };
    if categories.is_empty() {
        return Err(CliError::Config("no category selected (use --category rel|pinj|dstoch|all)".into()));
    }
    let mut cats = Vec::new();
    for c in &categories {
        if c == "all" {
            cats.extend(Category::ALL);
        } else {
            cats.push(c.parse::<Category>()?);
        }
    }
    cats.sort();
    cats.dedup();

    let suite_names = if a.suite.is_empty() { file.suite.clone().unwrap_or_default() } else { a.suite.clone() };
    let mut suites = Vec::new();
    if suite_names.is_empty() {
        suites.extend(LawSuite::ALL.map(Suite::Category));
    }
    for s in &suite_names {
        suites.extend(Suite::parse(s)?);
    }
    suites.sort();
    suites.dedup();

    let explicit_pairs = cats.len() == 1 && suite_names.iter().all(|s| s != "all");
    let mut runs = Vec::new();
    for &c in &cats {
        for &s in &suites {
            if s.applies_to(c) {
                runs.push((c, s));
            } else if explicit_pairs {
                return Err(CliError::Config(format!("suite `{s}` does not apply to {c}")));
            }
        }
    }
    if runs.is_empty() {
        return Err(CliError::Config("the selected suites do not apply to the selected categories".into()));
    }

    let sizes = match (a.max_size.or(if a.sizes.is_some() { None } else { file.max_size }), &a.sizes) {
        (_, Some(sizes)) => sizes.clone(),
        (Some(n), None) => (0..=n).collect(),
        (None, None) => file.sizes.clone().unwrap_or_else(|| vec![0, 1, 2]),
    };
    if sizes.is_empty() {
        return Err(CliError::Config("no object sizes selected".into()));
    }
    let seed = a.seed.or(file.seed);
    if seed.is_none() {
        if let Some((c, s)) = runs.iter().find(|(c, s)| s.is_randomized(*c)) {
            return Err(CliError::Config(format!("suite `{s}` on {c} is randomized; pass --seed")));
        }
    }
    let tolerance = a.tolerance.or(file.tolerance).unwrap_or(dualdag_core::dagcat::DEFAULT_TOLERANCE);
    if !(tolerance > 0.0) {
        return Err(CliError::Config("tolerance must be positive".into()));
    }
    Ok(Plan {
        runs,
        sizes,
        trials: a.trials.or(file.trials).unwrap_or(100),
        seed,
        tolerance,
        enum_cap: a.enum_cap.or(file.enum_cap).unwrap_or(DEFAULT_ENUM_CAP),
    })
}

fn capped(sizes: &[usize]) -> Vec<usize> {
    sizes.iter().copied().filter(|&n| n <= FUNCTIONAL_SIZE_CAP).collect()
}

fn run_one(plan: &Plan, category: Category, suite: Suite) -> Result<LawReport> {
    let seed = plan.seed.unwrap_or(0);
    let largest = plan.sizes.iter().copied().max().unwrap_or(0);
    let policy = default_policy(category);
    let report = match suite {
        Suite::Category(s) => {
            let mut config = LawConfig::with_sizes(plan.sizes.clone()).with_trials(plan.trials);
            config.seed = plan.seed;
            config.tolerance = plan.tolerance;
            config.enum_cap = plan.enum_cap;
            law_suite(category, s, &config)?
        }
        Suite::FixedPointAdjoint => {
            let mut config = RandomSuiteConfig::new(plan.trials, seed);
            config.tree = TreeConfig { max_size: largest.max(1), ..TreeConfig::default() };
            random_fixed_point_adjoint_suite(category, &config, &policy)?
        }
        Suite::Parametrized => {
            let k = largest.clamp(1, FUNCTIONAL_SIZE_CAP);
            let mut config = RandomSuiteConfig::new(plan.trials, seed);
            config.tree = TreeConfig { max_size: k, ..TreeConfig::default() };
            let p_space = HomSpace::new(category, FinObject::new(k), FinObject::new(k))?;
            random_parametrized_suite(&p_space, &config, &policy)?
        }
        Suite::Trace => {
            let mut report = LawReport::new("trace");
            for u in capped(&plan.sizes) {
                report.merge(check_dagger_trace(&TraceCheck::new(category, 1, 1, u).with_dinaturality())?);
            }
            report
        }
        Suite::Naturality => {
            let mut report = LawReport::new("naturality");
            let sizes = capped(&plan.sizes);
            for functor in [FunctorDesc::Identity, FunctorDesc::DisjointUnionWith(FinObject::new(1))] {
                for family in [
                    NaturalFamily::join_family(category, functor.clone()),
                    NaturalFamily::projection_family(category, functor.clone()),
                ] {
                    let mut harness = NaturalityHarness::new(&family, NATURALITY_FUEL, &policy);
                    report.merge(harness.check_all(&sizes)?);
                }
            }
            report
        }
    };
    Ok(report)
}

#[derive(Serialize)]
struct Entry<'a> {
    category: Category,
    #[serde(flatten)]
    report: &'a LawReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    elapsed_ms: Option<f64>,
}

pub fn run(ctx: &Context, a: &LawsArgs) -> Result<Output> {
    let plan = plan(ctx, a)?;
    let mut results = Vec::new();
    for &(category, suite) in &plan.runs {
        let start = Instant::now();
        let mut report = run_one(&plan, category, suite)?;
        report.suite = suite.name().to_string();
        report.elapsed = start.elapsed();
        results.push((category, report));
    }
    let violations: u64 = results.iter().map(|(_, r)| r.violation_count).sum();
    let code = if violations == 0 { exit::PASS } else { exit::VIOLATION };
    let stdout = match ctx.format {
        Format::Json => {
            let entries: Vec<_> = results
                .iter()
                .map(|(category, report)| Entry {
                    category: *category,
                    report,
                    elapsed_ms: ctx.timings.then(|| report.elapsed.as_secs_f64() * 1e3),
                })
                .collect();
            json_line(&json!({
                "command": "laws",
                "passed": violations == 0,
                "sizes": plan.sizes,
                "trials": plan.trials,
                "seed": plan.seed,
                "tolerance": plan.tolerance,
                "violation_count": violations,
                "results": entries,
            }))
        }
        Format::Text => {
            let mut s = String::new();
            for (category, r) in &results {
                let verdict = if r.passed() { "PASS" } else { "FAIL" };
                let _ = write!(s, "[{verdict}] {category} {}: checked {}, skipped {}, violations {}", r.suite, r.checked, r.skipped, r.violation_count);
                if ctx.timings {
                    let _ = write!(s, " ({:.1} ms)", r.elapsed.as_secs_f64() * 1e3);
                }
                s.push('\n');
                for (law, n) in &r.laws {
                    let _ = writeln!(s, "    {law}: {n}");
                }
                for v in &r.violations {
                    let _ = writeln!(s, "    violated {}: {}", v.law, v.witness.join("; "));
                }
            }
            let _ = writeln!(s, "{} suite run(s), {violations} violation(s)", results.len());
            s
        }
    };
    Ok(Output::new(code, stdout))
}
