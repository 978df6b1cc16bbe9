//! Seeded round-trip checks: running a program and then its inverse must
//! give back the input, at the same fuel, and evaluation results never
//! change once fuel suffices.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::ast::{Pattern, Program, Value};
use crate::error::{Error, Result};
use crate::eval::{eval, Bindings, Outcome};
use crate::invert::{invert, invert_bindings, DEFAULT_SUFFIX};
use crate::universe::Universe;
use crate::validate::validate;

/// Largest number of failures kept verbatim in a report.
pub const MAX_RECORDED_FAILURES: usize = 64;

/// Where random inputs come from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sampler {
    /// Uniform over all terms of size at most `bound`.
    Terms { bound: usize },
    /// Peano numerals `0..=max`.
    Nat { max: usize },
    /// Pairs of Peano numerals, each `0..=max`.
    NatPair { max: usize },
    /// Lists of length `0..=max_len` of numerals `0..=max`.
    NatList { max_len: usize, max: usize },
}

impl Sampler {
    /// Picks a sampler from the shape of the function's left-hand sides:
    /// pairs give numeral pairs, list constructors give numeral lists,
    /// numeral constructors give numerals, anything else all small terms.
    pub fn infer(program: &Program, fname: &str) -> Sampler {
        let Some(def) = program.def(fname) else { return Sampler::Terms { bound: 6 } };
        let lhs: Vec<&Pattern> = def.clauses.iter().map(|c| &c.lhs).collect();
        if lhs.iter().any(|p| matches!(p, Pattern::Pair(..))) {
            Sampler::NatPair { max: 20 }
        } else if lhs.iter().any(|p| matches!(p, Pattern::Nil | Pattern::Cons(..))) {
            Sampler::NatList { max_len: 5, max: 5 }
        } else if lhs.iter().any(|p| matches!(p, Pattern::Z | Pattern::S(_))) {
            Sampler::Nat { max: 20 }
        } else {
            Sampler::Terms { bound: 6 }
        }
    }

    fn source(self, atoms: &[String]) -> Result<Source> {
        let universe = match self {
            Sampler::Terms { bound } => Some(Universe::terms(bound, atoms)?),
            _ => None,
        };
        Ok(Source { sampler: self, universe })
    }
}

impl fmt::Display for Sampler {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sampler::Terms { bound } => write!(f, "terms:{bound}"),
            Sampler::Nat { max } => write!(f, "nat:{max}"),
            Sampler::NatPair { max } => write!(f, "nat-pair:{max}"),
            Sampler::NatList { max_len, max } => write!(f, "nat-list:{max_len}:{max}"),
        }
    }
}

impl FromStr for Sampler {
    type Err = String;

    /// `terms[:BOUND]`, `nat[:MAX]`, `nat-pair[:MAX]`, `nat-list[:LEN[:MAX]]`.
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let mut parts = s.split(':');
        let kind = parts.next().unwrap_or_default();
        let nums = parts
            .map(|p| p.parse::<usize>().map_err(|_| format!("`{p}` in sampler `{s}` is not a number")))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        let arg = |i: usize, default: usize| nums.get(i).copied().unwrap_or(default);
        let (sampler, arity) = match kind {
            "terms" => (Sampler::Terms { bound: arg(0, 6) }, 1),
            "nat" => (Sampler::Nat { max: arg(0, 20) }, 1),
            "nat-pair" => (Sampler::NatPair { max: arg(0, 20) }, 1),
            "nat-list" => (Sampler::NatList { max_len: arg(0, 5), max: arg(1, 5) }, 2),
            other => return Err(format!("unknown sampler `{other}` (expected terms, nat, nat-pair or nat-list)")),
        };
        if nums.len() > arity {
            return Err(format!("sampler `{kind}` takes at most {arity} number(s)"));
        }
        Ok(sampler)
    }
}

struct Source {
    sampler: Sampler,
    universe: Option<Universe>,
}

impl Source {
    fn sample(&self, rng: &mut ChaCha8Rng) -> Value {
        match self.sampler {
            Sampler::Terms { .. } => {
                let values = self.universe.as_ref().expect("built for term sampling").values();
                if values.is_empty() {
                    return Value::Z;
                }
                values[rng.gen_range(0..values.len())].clone()
            }
            Sampler::Nat { max } => Value::nat(rng.gen_range(0..=max)),
            Sampler::NatPair { max } => {
                let a = rng.gen_range(0..=max);
                Value::pair(Value::nat(a), Value::nat(rng.gen_range(0..=max)))
            }
            Sampler::NatList { max_len, max } => {
                let len = rng.gen_range(0..=max_len);
                Value::list((0..len).map(|_| Value::nat(rng.gen_range(0..=max))).collect())
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct RoundtripConfig {
    pub trials: usize,
    pub fuel: u64,
    pub seed: u64,
    pub sampler: Option<Sampler>,
    pub suffix: String,
    /// Also locate the least defining fuel and check the inverse needs
    /// exactly as much.
    pub check_fuel_adjoint: bool,
}

impl RoundtripConfig {
    pub fn new(trials: usize, fuel: u64, seed: u64) -> Self {
        RoundtripConfig { trials, fuel, seed, sampler: None, suffix: DEFAULT_SUFFIX.to_string(), check_fuel_adjoint: true }
    }

    pub fn with_sampler(mut self, sampler: Sampler) -> Self {
        self.sampler = Some(sampler);
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FailureKind {
    /// The inverse did not return the input.
    Roundtrip,
    /// The inverse needed a different amount of fuel than the forward run.
    FuelAdjoint,
    /// A defined (or stuck) result changed when fuel increased.
    FuelMonotonicity,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub kind: FailureKind,
    pub input: Value,
    pub detail: String,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            FailureKind::Roundtrip => "roundtrip",
            FailureKind::FuelAdjoint => "fuel-adjoint",
            FailureKind::FuelMonotonicity => "fuel-monotonicity",
        };
        write!(f, "[{kind}] {}: {}", self.input, self.detail)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct OutcomeCounts {
    pub defined: u64,
    pub undefined: u64,
    pub stuck: u64,
}

impl OutcomeCounts {
    fn record(&mut self, o: &Outcome) {
        match o {
            Outcome::Value(_) => self.defined += 1,
            Outcome::Undefined => self.undefined += 1,
            Outcome::Stuck(_) => self.stuck += 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RoundtripReport {
    pub function: String,
    pub inverse: String,
    pub sampler: String,
    pub seed: u64,
    pub fuel: u64,
    pub trials: u64,
    pub outcomes: OutcomeCounts,
    pub fuel_checked: u64,
    pub failure_count: u64,
    pub failures: Vec<Failure>,
}

impl RoundtripReport {
    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }

    fn fail(&mut self, kind: FailureKind, input: &Value, detail: String) {
        self.failure_count += 1;
        if self.failures.len() < MAX_RECORDED_FAILURES {
            self.failures.push(Failure { kind, input: input.clone(), detail });
        }
    }
}

fn ensure_valid(program: &Program) -> Result<()> {
    let diags = validate(program);
    if diags.is_empty() {
        Ok(())
    } else {
        Err(Error::Invalid(diags))
    }
}

/// Smallest fuel in `1..=fuel` at which `f` is defined on `v`, assuming
/// (as fuel monotonicity guarantees) that definedness persists upward.
fn least_defining_fuel(program: &Program, fname: &str, b: &Bindings, v: &Value, fuel: u64) -> Result<Option<u64>> {
    if !eval(program, fname, b, v, fuel)?.is_defined() {
        return Ok(None);
    }
    let (mut lo, mut hi) = (0, fuel);
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if eval(program, fname, b, v, mid)?.is_defined() {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(Some(hi))
}

/// Runs `fname` on seeded random inputs and its inverse on every defined
/// result. The program must validate.
pub fn roundtrip_check(program: &Program, fname: &str, bindings: &Bindings, config: &RoundtripConfig) -> Result<RoundtripReport> {
    ensure_valid(program)?;
    if program.def(fname).is_none() {
        return Err(Error::UnknownFunction(fname.to_string()));
    }
    let inverse_program = invert(program, &config.suffix);
    let inverse = format!("{fname}{}", config.suffix);
    let inverse_bindings = invert_bindings(bindings, &config.suffix);
    let sampler = config.sampler.unwrap_or_else(|| Sampler::infer(program, fname));
    let source = sampler.source(&program.atoms)?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut report = RoundtripReport {
        function: fname.to_string(),
        inverse: inverse.clone(),
        sampler: sampler.to_string(),
        seed: config.seed,
        fuel: config.fuel,
        trials: config.trials as u64,
        outcomes: OutcomeCounts::default(),
        fuel_checked: 0,
        failure_count: 0,
        failures: Vec::new(),
    };
    for _ in 0..config.trials {
        let v = source.sample(&mut rng);
        let forward = eval(program, fname, bindings, &v, config.fuel)?;
        report.outcomes.record(&forward);
        let Outcome::Value(w) = forward else { continue };
        let back = eval(&inverse_program, &inverse, &inverse_bindings, &w, config.fuel)?;
        if back != Outcome::Value(v.clone()) {
            report.fail(FailureKind::Roundtrip, &v, format!("{fname} gives {w}, but {inverse} gives back {back}"));
            continue;
        }
        if !config.check_fuel_adjoint {
            continue;
        }
        let n = least_defining_fuel(program, fname, bindings, &v, config.fuel)?.expect("defined at full fuel");
        report.fuel_checked += 1;
        let at_n = eval(&inverse_program, &inverse, &inverse_bindings, &w, n)?;
        let below = eval(&inverse_program, &inverse, &inverse_bindings, &w, n - 1)?;
        if at_n != Outcome::Value(v.clone()) || below.is_defined() {
            report.fail(
                FailureKind::FuelAdjoint,
                &v,
                format!("{fname} first defined at fuel {n}; {inverse} gives {at_n} at {n} and {below} at {}", n - 1),
            );
        }
    }
    Ok(report)
}

#[derive(Debug, Clone)]
pub struct MonotonicityConfig {
    pub pairs: usize,
    pub max_fuel: u64,
    pub seed: u64,
    pub sampler: Option<Sampler>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonotonicityReport {
    pub function: String,
    pub pairs: u64,
    pub outcomes: OutcomeCounts,
    pub failure_count: u64,
    pub failures: Vec<Failure>,
}

impl MonotonicityReport {
    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }
}

/// For seeded (value, fuel) pairs: whenever the result at fuel `n` is not
/// `Undefined`, the result at a larger fuel is the same.
pub fn check_fuel_monotonicity(
    program: &Program,
    fname: &str,
    bindings: &Bindings,
    config: &MonotonicityConfig,
) -> Result<MonotonicityReport> {
    ensure_valid(program)?;
    let sampler = config.sampler.unwrap_or_else(|| Sampler::infer(program, fname));
    let source = sampler.source(&program.atoms)?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut report = MonotonicityReport {
        function: fname.to_string(),
        pairs: config.pairs as u64,
        outcomes: OutcomeCounts::default(),
        failure_count: 0,
        failures: Vec::new(),
    };
    for _ in 0..config.pairs {
        let v = source.sample(&mut rng);
        let n = rng.gen_range(0..=config.max_fuel);
        let larger = rng.gen_range(n..=config.max_fuel.max(n) + 1);
        let at_n = eval(program, fname, bindings, &v, n)?;
        report.outcomes.record(&at_n);
        if at_n == Outcome::Undefined {
            continue;
        }
        let at_larger = eval(program, fname, bindings, &v, larger)?;
        if at_larger != at_n {
            report.failure_count += 1;
            if report.failures.len() < MAX_RECORDED_FAILURES {
                report.failures.push(Failure {
                    kind: FailureKind::FuelMonotonicity,
                    input: v,
                    detail: format!("fuel {n} gives {at_n}, fuel {larger} gives {at_larger}"),
                });
            }
        }
    }
    Ok(report)
}
