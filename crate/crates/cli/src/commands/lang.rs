//! `dualdag run`, `invert` and `roundtrip` for reversible programs.

use std::fmt::Write as _;
use std::path::Path;

use dualdag_revlang::programs;
use dualdag_revlang::{
    eval, invert as invert_program, invert_bindings, parse, parse_fnref, parse_value, roundtrip_check, validate,
    Bindings, Error as LangError, FnRef, Outcome, Program, RoundtripConfig, Sampler, DEFAULT_SUFFIX,
};
use serde_json::json;

use crate::args::{Format, InvertArgs, ProgramArgs, RoundtripArgs, RunArgs};
use crate::error::{exit, CliError, Result};
use crate::{json_line, read_file, Context, Output};

const DEFAULT_RUN_FUEL: u64 = 1000;
const DEFAULT_ROUNDTRIP_FUEL: u64 = 10_000;
const DEFAULT_TRIALS: usize = 100;

struct Loaded {
    program: Program,
    function: String,
    bindings: Bindings,
}

/// Reads a program from a file, or a bundled program by name, validates
/// it, and resolves the entry function and its bindings.
fn load(a: &ProgramArgs) -> Result<Loaded> {
    let path = Path::new(&a.program);
    let (source, bundled) = if path.exists() {
        (read_file(path)?, None)
    } else if let Some(src) = programs::source(&a.program) {
        (src.to_string(), Some(a.program.as_str()))
    } else {
        return Err(CliError::Config(format!("`{}` is neither a file nor a bundled program", a.program)));
    };
    let program = parse(&source)?;
    let diags = validate(&program);
    if !diags.is_empty() {
        return Err(LangError::Invalid(diags).into());
    }
    let function = match (&a.function, bundled) {
        (Some(f), _) => f.clone(),
        (None, Some(name)) => programs::entry(name).expect("bundled").to_string(),
        (None, None) => program
            .defs
            .first()
            .map(|d| d.name.clone())
            .ok_or_else(|| CliError::Config("the program defines no functions".into()))?,
    };
    if program.def(&function).is_none() {
        return Err(LangError::UnknownFunction(function).into());
    }
    let mut bindings = bundled.map(programs::default_bindings).unwrap_or_default();
    for b in &a.bind {
        let (param, target) = b
            .split_once('=')
            .ok_or_else(|| CliError::Config(format!("binding `{b}` is not of the form PARAM=FUNCTION")))?;
        let target: FnRef = parse_fnref(target.trim())?;
        bindings.insert(param.trim().to_string(), target);
    }
    Ok(Loaded { program, function, bindings })
}

fn suffix(ctx: &Context, given: &Option<String>) -> String {
    given.clone().or_else(|| ctx.file.suffix.clone()).unwrap_or_else(|| DEFAULT_SUFFIX.to_string())
}

pub fn run(ctx: &Context, a: &RunArgs) -> Result<Output> {
    let loaded = load(&a.program)?;
    let value = parse_value(&a.arg)?;
    let fuel = a.fuel.or(ctx.file.fuel).unwrap_or(DEFAULT_RUN_FUEL);
    let (program, function, bindings) = if a.inverse {
        let s = suffix(ctx, &None);
        (invert_program(&loaded.program, &s), format!("{}{s}", loaded.function), invert_bindings(&loaded.bindings, &s))
    } else {
        (loaded.program, loaded.function, loaded.bindings)
    };
    let outcome = eval(&program, &function, &bindings, &value, fuel)?;
    let code = match outcome {
        Outcome::Value(_) => exit::PASS,
        Outcome::Undefined => exit::NON_CONVERGENCE,
        Outcome::Stuck(_) => exit::INPUT,
    };
    let stdout = match ctx.format {
        Format::Json => json_line(&json!({
            "command": "run",
            "function": function,
            "input": value.to_string(),
            "fuel": fuel,
            "result": outcome,
        })),
        Format::Text => format!("{outcome}\n"),
    };
    Ok(Output::new(code, stdout))
}

pub fn invert(ctx: &Context, a: &InvertArgs) -> Result<Output> {
    let loaded = load(&a.program)?;
    let s = suffix(ctx, &a.suffix);
    let text = invert_program(&loaded.program, &s).to_string();
    if let Some(path) = &a.output {
        std::fs::write(path, &text)
            .map_err(|e| CliError::Io { path: path.display().to_string(), message: e.to_string() })?;
    }
    let stdout = match (ctx.format, &a.output) {
        (Format::Json, _) => json_line(&json!({
            "command": "invert",
            "suffix": s,
            "program": text,
            "output": a.output.as_ref().map(|p| p.display().to_string()),
        })),
        (Format::Text, Some(path)) => format!("wrote {}\n", path.display()),
        (Format::Text, None) => text,
    };
    Ok(Output::new(exit::PASS, stdout))
}

pub fn roundtrip(ctx: &Context, a: &RoundtripArgs) -> Result<Output> {
    let loaded = load(&a.program)?;
    let seed = a
        .seed
        .or(ctx.file.seed)
        .ok_or_else(|| CliError::Config("roundtrip draws random inputs; pass --seed".into()))?;
    let mut config = RoundtripConfig::new(
        a.trials.or(ctx.file.trials).unwrap_or(DEFAULT_TRIALS),
        a.fuel.or(ctx.file.fuel).unwrap_or(DEFAULT_ROUNDTRIP_FUEL),
        seed,
    );
    config.suffix = suffix(ctx, &a.suffix);
    if let Some(s) = a.sample.clone().or_else(|| ctx.file.sample.clone()) {
        config.sampler = Some(s.parse::<Sampler>().map_err(CliError::Config)?);
    }
    let report = roundtrip_check(&loaded.program, &loaded.function, &loaded.bindings, &config)?;
    let code = if report.passed() { exit::PASS } else { exit::VIOLATION };
    let stdout = match ctx.format {
        Format::Json => json_line(&json!({
            "command": "roundtrip",
            "passed": report.passed(),
            "report": report,
        })),
        Format::Text => {
            let mut s = String::new();
            let verdict = if report.passed() { "PASS" } else { "FAIL" };
            let o = &report.outcomes;
            let _ = writeln!(
                s,
                "[{verdict}] {} then {}: {} trials ({}), fuel {}, seed {}",
                report.function, report.inverse, report.trials, report.sampler, report.fuel, report.seed
            );
            let _ = writeln!(s, "    defined {}, undefined {}, stuck {}", o.defined, o.undefined, o.stuck);
            let _ = writeln!(s, "    fuel-adjoint checked {}", report.fuel_checked);
            for f in &report.failures {
                let _ = writeln!(s, "    {f}");
            }
            let _ = writeln!(s, "{} failure(s)", report.failure_count);
            s
        }
    };
    Ok(Output::new(code, stdout))
}
