use std::path::PathBuf;

use dualdag_cli::{exit, run, Output};
use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name).display().to_string()
}

fn dualdag(args: &[&str]) -> Output {
    run(std::iter::once("dualdag").chain(args.iter().copied()))
}

fn json(out: &Output) -> Value {
    serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", out.stdout))
}

/// A scratch file under the system temp directory, removed on drop.
struct Scratch(PathBuf);

impl Scratch {
    fn new(name: &str, contents: &str) -> Self {
        let path = std::env::temp_dir().join(format!("dualdag-{}-{name}", std::process::id()));
        std::fs::write(&path, contents).unwrap();
        Scratch(path)
    }

    fn path(&self) -> &str {
        self.0.to_str().unwrap()
    }
}

impl Drop for Scratch {
    fn drop(&mut self) {
        let _ = std::fs::remove_file(&self.0);
    }
}

#[test]
fn laws_pass_with_exit_zero() {
    let out = dualdag(&["laws", "--category", "rel,pinj", "--max-size", "2"]);
    assert_eq!(out.code, exit::PASS, "{}", out.stderr);
    assert!(out.stdout.contains("[PASS] rel dagger"));
    assert!(out.stdout.contains("[PASS] pinj enrichment"));
    assert!(out.stdout.ends_with("8 suite run(s), 0 violation(s)\n"));
}

#[test]
fn laws_json_report_shape() {
    let out = dualdag(&["--format", "json", "laws", "--category", "rel", "--suite", "order-iso", "--sizes", "2"]);
    assert_eq!(out.code, exit::PASS);
    let doc = json(&out);
    assert_eq!(doc["command"], "laws");
    assert_eq!(doc["passed"], true);
    assert_eq!(doc["violation_count"], 0);
    let entry = &doc["results"][0];
    assert_eq!(entry["category"], "rel");
    assert_eq!(entry["suite"], "order-iso");
    assert_eq!(entry["laws"]["order-iso"], 256);
    assert!(entry.get("elapsed_ms").is_none());
}

#[test]
fn randomized_suites_require_a_seed() {
    let out = dualdag(&["laws", "--category", "dstoch"]);
    assert_eq!(out.code, exit::INPUT);
    assert!(out.stderr.contains("--seed"), "{}", out.stderr);
    let out = dualdag(&["laws", "--category", "dstoch", "--seed", "7", "--trials", "200"]);
    assert_eq!(out.code, exit::PASS, "{}", out.stderr);
}

#[test]
fn configuration_errors_exit_two() {
    for args in [
        &["laws"][..],
        &["laws", "--category", "sets"],
        &["laws", "--category", "rel", "--suite", "nonsense"],
        &["laws", "--category", "dstoch", "--suite", "trace", "--seed", "1"],
        &["laws", "--category", "rel", "--tolerance", "0"],
        &["fix", "/nonexistent/functional.json"],
        &["run", "no-such-program"],
        &["frobnicate"],
    ] {
        let out = dualdag(args);
        assert_eq!(out.code, exit::INPUT, "{args:?}: {}", out.stderr);
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn help_exits_zero() {
    let out = dualdag(&["--help"]);
    assert_eq!(out.code, exit::PASS);
    assert!(out.stdout.contains("roundtrip"));
}

#[test]
fn all_suites_on_all_categories() {
    let out = dualdag(&["--format", "json", "laws", "--category", "all", "--suite", "all", "--seed", "1", "--trials", "20"]);
    assert_eq!(out.code, exit::PASS, "{}", out.stderr);
    let doc = json(&out);
    let results = doc["results"].as_array().unwrap();
    // Eight suites on each enumerable category; no exhaustive functional suites on DStoch.
    assert_eq!(results.len(), 8 + 8 + 5);
    assert!(results.iter().all(|r| r["violation_count"] == 0));
}

#[test]
fn same_seed_gives_identical_reports() {
    let args = ["--format", "json", "laws", "--category", "dstoch,pinj", "--suite", "all", "--seed", "42", "--trials", "50"];
    let a = dualdag(&args);
    let b = dualdag(&args);
    assert_eq!(a.code, exit::PASS);
    assert_eq!(a.stdout, b.stdout);
    let c = dualdag(&["--format", "json", "laws", "--category", "dstoch,pinj", "--suite", "all", "--seed", "43", "--trials", "50"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn config_file_supplies_defaults_and_flags_override() {
    let config = Scratch::new(
        "laws.toml",
        "format = \"json\"\ncategory = [\"dstoch\"]\nsuite = [\"monotone-dagger\"]\nseed = 3\ntrials = 25\n",
    );
    let out = dualdag(&["--config", config.path(), "laws"]);
    assert_eq!(out.code, exit::PASS, "{}", out.stderr);
    let doc = json(&out);
    assert_eq!(doc["seed"], 3);
    assert_eq!(doc["trials"], 25);

    let out = dualdag(&["--config", config.path(), "--format", "text", "laws", "--trials", "5", "--seed", "9"]);
    assert_eq!(out.code, exit::PASS);
    assert!(out.stdout.starts_with("[PASS] dstoch monotone-dagger: checked 5,"), "{}", out.stdout);
}

#[test]
fn malformed_config_file_is_rejected() {
    let config = Scratch::new("bad.toml", "colour = \"blue\"\n");
    let out = dualdag(&["--config", config.path(), "laws", "--category", "rel"]);
    assert_eq!(out.code, exit::INPUT);
    let out = dualdag(&["--config", "/nonexistent/dualdag.toml", "laws", "--category", "rel"]);
    assert_eq!(out.code, exit::INPUT);
}

#[test]
fn fix_computes_transitive_closure() {
    let out = dualdag(&["--format", "json", "fix", &data("closure.json")]);
    assert_eq!(out.code, exit::PASS, "{}", out.stderr);
    let doc = json(&out);
    assert_eq!(doc["morphism"]["pairs"], serde_json::json!([[0, 1], [0, 2], [1, 2]]));
    assert_eq!(doc["converged"], true);
}

#[test]
fn fix_affine_stochastic_map() {
    let out = dualdag(&["--format", "json", "fix", &data("affine.json")]);
    assert_eq!(out.code, exit::PASS, "{}", out.stderr);
    let doc = json(&out);
    let value = doc["morphism"]["rows"][0][0].as_f64().unwrap();
    assert!((value - 0.5).abs() < 1e-9, "{value}");
    assert!(doc["iterations"].as_u64().unwrap() <= 64);
}

#[test]
fn fix_without_convergence_exits_three() {
    let out = dualdag(&["fix", &data("affine.json"), "--max-iterations", "3"]);
    assert_eq!(out.code, exit::NON_CONVERGENCE, "{}", out.stderr);
}

#[test]
fn trace_of_the_orbit_example() {
    let out = dualdag(&["--format", "json", "trace", &data("orbit.json"), "--u", "2"]);
    assert_eq!(out.code, exit::PASS, "{}", out.stderr);
    let doc = json(&out);
    assert_eq!((doc["x"].as_u64(), doc["y"].as_u64()), (Some(1), Some(1)));
    assert_eq!(doc["morphism"]["type"], "pinj");
    let out = dualdag(&["trace", &data("orbit.json"), "--u", "4"]);
    assert_eq!(out.code, exit::INPUT);
}

#[test]
fn run_reports_value_undefined_and_stuck() {
    let out = dualdag(&["run", "add", "--arg", "(S Z, S Z)"]);
    assert_eq!((out.code, out.stdout.as_str()), (exit::PASS, "(S Z, S (S Z))\n"));
    let out = dualdag(&["run", "add", "--arg", "(S Z, S Z)", "--fuel", "1"]);
    assert_eq!(out.code, exit::NON_CONVERGENCE);
    let out = dualdag(&["run", "add", "--arg", "Nil"]);
    assert_eq!(out.code, exit::INPUT);
    let out = dualdag(&["--format", "json", "run", "add", "--inverse", "--arg", "(S Z, S (S Z))"]);
    assert_eq!(out.code, exit::PASS);
    let doc = json(&out);
    assert_eq!(doc["function"], "add_inv");
    assert_eq!(doc["result"]["outcome"], "value");
    assert_eq!(doc["result"]["detail"], "(S Z, S Z)");
}

#[test]
fn run_with_explicit_binding() {
    let out = dualdag(&["run", "map", "--bind", "g=inc†", "--arg", "Cons (S Z) (Cons (S (S Z)) Nil)"]);
    assert_eq!((out.code, out.stdout.as_str()), (exit::PASS, "Cons Z (Cons (S Z) Nil)\n"));
}

#[test]
fn invert_prints_and_writes_the_inverse() {
    let out = dualdag(&["invert", "swap"]);
    assert_eq!(out.code, exit::PASS);
    assert!(out.stdout.contains("fun swap_inv (b, a) = (a, b)"), "{}", out.stdout);

    let target = Scratch::new("add_back.rvl", "");
    let out = dualdag(&["invert", "add", "--suffix", "_back", "--output", target.path()]);
    assert_eq!(out.code, exit::PASS, "{}", out.stderr);
    let written = std::fs::read_to_string(target.path()).unwrap();
    assert!(written.contains("add_back"));
    let program = dualdag_revlang::parse(&written).unwrap();
    assert!(dualdag_revlang::validate(&program).is_empty());
}

#[test]
fn invalid_programs_are_rejected_with_diagnostics() {
    let src = Scratch::new("dup.rvl", "fun dup x = (x, x)\n");
    let out = dualdag(&["run", src.path(), "--arg", "Z"]);
    assert_eq!(out.code, exit::INPUT);
    assert!(out.stderr.contains("linearity"), "{}", out.stderr);
}

#[test]
fn roundtrip_bundled_programs() {
    for name in ["swap", "add", "map"] {
        let out = dualdag(&["--format", "json", "roundtrip", name, "--seed", "1", "--trials", "30"]);
        assert_eq!(out.code, exit::PASS, "{name}: {}", out.stderr);
        let doc = json(&out);
        assert_eq!(doc["passed"], true);
        assert_eq!(doc["report"]["trials"], 30);
    }
    let out = dualdag(&["roundtrip", "add"]);
    assert_eq!(out.code, exit::INPUT);
}

#[test]
fn roundtrip_program_from_a_file() {
    let src = Scratch::new("double.rvl", "-- doubles a numeral\nfun dbl Z = Z\nfun dbl (S n) = let m = dbl n in S (S m)\n");
    let out = dualdag(&["roundtrip", src.path(), "--seed", "2", "--trials", "10", "--sample", "nat:8"]);
    assert_eq!(out.code, exit::PASS, "{}{}", out.stdout, out.stderr);
    assert!(out.stdout.starts_with("[PASS] dbl then dbl_inv: 10 trials"), "{}", out.stdout);
}
