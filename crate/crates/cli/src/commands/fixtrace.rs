//! `dualdag fix` and `dualdag trace`: both print a morphism document.

use dualdag_core::dagcat::{doc::morphism_to_json, doc::morphism_from_json, FinObject, Morphism};
use dualdag_core::functionals::{default_policy, fix_functional, functional_from_json, trace as dagger_trace};
use dualdag_core::order::FixPolicy;
use serde_json::json;

use crate::args::{FixArgs, Format, Mode, TraceArgs};
use crate::error::{exit, CliError, Result};
use crate::{json_line, read_file, Context, Output};

fn morphism_value(m: &Morphism) -> serde_json::Value {
    serde_json::from_str(&morphism_to_json(m)).expect("morphism documents are JSON")
}

pub fn fix(ctx: &Context, a: &FixArgs) -> Result<Output> {
    let phi = functional_from_json(&read_file(&a.file)?)?;
    let category = phi.domain().category();
    let mut policy = default_policy(category);
    match a.mode.or(ctx.file.mode) {
        Some(Mode::Exact) => policy = FixPolicy { tolerance: policy.tolerance, ..FixPolicy::exact() },
        Some(Mode::Metric) => policy = FixPolicy::metric(policy.tolerance),
        None => {}
    }
    if let Some(t) = a.tolerance.or(ctx.file.tolerance) {
        if !(t > 0.0) {
            return Err(CliError::Config("tolerance must be positive".into()));
        }
        policy.tolerance = t;
    }
    if let Some(n) = a.max_iterations.or(ctx.file.max_iterations) {
        policy = policy.with_max_iterations(n);
    }
    let result = fix_functional(&phi, &policy)?;
    let stdout = match ctx.format {
        Format::Json => json_line(&json!({
            "command": "fix",
            "category": category,
            "morphism": morphism_value(&result.value),
            "iterations": result.iterations,
            "converged": result.converged,
            "residual": result.residual,
        })),
        Format::Text => {
            let mut s = morphism_to_json(&result.value);
            s.push('\n');
            s.push_str(&format!("iterations: {}, converged: {}", result.iterations, result.converged));
            if let Some(r) = result.residual {
                s.push_str(&format!(", residual: {r:e}"));
            }
            s.push('\n');
            s
        }
    };
    Ok(Output::new(exit::PASS, stdout))
}

pub fn trace(ctx: &Context, a: &TraceArgs) -> Result<Output> {
    let f = morphism_from_json(&read_file(&a.file)?)?;
    let block = |given: Option<usize>, total: usize, which: &str| -> Result<usize> {
        match given {
            Some(n) => Ok(n),
            None => total.checked_sub(a.u).ok_or_else(|| {
                CliError::Config(format!("U has size {} but the {which} of the morphism has size {total}", a.u))
            }),
        }
    };
    let x = block(a.x, f.src().size, "source")?;
    let y = block(a.y, f.dst().size, "target")?;
    let traced = dagger_trace(&f, &FinObject::new(x), &FinObject::new(y), &FinObject::new(a.u))?;
    let stdout = match ctx.format {
        Format::Json => json_line(&json!({
            "command": "trace",
            "x": x,
            "y": y,
            "u": a.u,
            "morphism": morphism_value(&traced),
        })),
        Format::Text => format!("{}\n", morphism_to_json(&traced)),
    };
    Ok(Output::new(exit::PASS, stdout))
}
