//! Fuel-indexed evaluation. Every call consumes one unit of fuel and nested
//! calls run with the remainder, so evaluating at fuel `n` computes the
//! `n`-th Kleene approximant of the recursive definition.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::Serialize;

use crate::ast::{Clause, FnRef, Pattern, Program, Value};
use crate::error::{Error, Result};

/// Assignment of function references to the formal parameters of the
/// entry function.
pub type Bindings = BTreeMap<String, FnRef>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", content = "detail", rename_all = "kebab-case")]
pub enum Outcome {
    /// The computation finished with a value.
    Value(Value),
    /// Fuel ran out: the approximant is undefined here.
    Undefined,
    /// No clause matched, or a call result failed to match its let pattern.
    Stuck(String),
}

impl Outcome {
    pub fn value(&self) -> Option<&Value> {
        match self {
            Outcome::Value(v) => Some(v),
            _ => None,
        }
    }

    pub fn is_defined(&self) -> bool {
        matches!(self, Outcome::Value(_))
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Outcome::Value(v) => write!(f, "{v}"),
            Outcome::Undefined => f.write_str("undefined (fuel exhausted)"),
            Outcome::Stuck(why) => write!(f, "stuck: {why}"),
        }
    }
}

/// A function reference with every parameter resolved to a definition.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Resolved {
    def: usize,
    args: Vec<Resolved>,
    dagger: bool,
}

struct Interp<'p> {
    program: &'p Program,
    index: HashMap<&'p str, usize>,
}

impl<'p> Interp<'p> {
    fn new(program: &'p Program) -> Self {
        let index = program.defs.iter().enumerate().map(|(i, d)| (d.name.as_str(), i)).collect();
        Interp { program, index }
    }

    /// Resolves `r` inside a definition whose parameters are bound to `env`.
    fn resolve(&self, r: &FnRef, params: &[String], env: &[Resolved]) -> Result<Resolved> {
        if let Some(i) = params.iter().position(|p| *p == r.name) {
            if !r.args.is_empty() {
                return Err(Error::Arity { name: r.name.clone(), expected: 0, found: r.args.len() });
            }
            let mut bound = env[i].clone();
            bound.dagger ^= r.dagger;
            return Ok(bound);
        }
        let &def = self.index.get(r.name.as_str()).ok_or_else(|| Error::UnknownFunction(r.name.clone()))?;
        let expected = self.program.defs[def].params.len();
        if expected != r.args.len() {
            return Err(Error::Arity { name: r.name.clone(), expected, found: r.args.len() });
        }
        let args = r.args.iter().map(|a| self.resolve(a, params, env)).collect::<Result<_>>()?;
        Ok(Resolved { def, args, dagger: r.dagger })
    }

    fn call(&self, f: &Resolved, v: Value, fuel: u64) -> Result<Outcome> {
        if fuel == 0 {
            return Ok(Outcome::Undefined);
        }
        let def = &self.program.defs[f.def];
        // Running backwards swaps the roles of lhs and out and reverses the lets.
        let mut env = HashMap::new();
        let clause = def.clauses.iter().find(|c| {
            env.clear();
            bind(sides(c, f.dagger).0, &v, &mut env)
        });
        let Some(clause) = clause else {
            let dir = if f.dagger { "†" } else { "" };
            return Ok(Outcome::Stuck(format!("no clause of `{}{dir}` matches {v}", def.name)));
        };
        let steps: Box<dyn Iterator<Item = _>> =
            if f.dagger { Box::new(clause.lets.iter().rev()) } else { Box::new(clause.lets.iter()) };
        for l in steps {
            let (arg, result_pat) = if f.dagger { (&l.pattern, &l.arg) } else { (&l.arg, &l.pattern) };
            let mut callee = self.resolve(&l.callee, &def.params, &f.args)?;
            callee.dagger ^= f.dagger;
            let Some(arg) = build(arg, &mut env) else {
                return Ok(Outcome::Stuck(format!("unbound variable in `{arg}` (program not validated)")));
            };
            match self.call(&callee, arg, fuel - 1)? {
                Outcome::Value(w) => {
                    if !bind(result_pat, &w, &mut env) {
                        return Ok(Outcome::Stuck(format!("result {w} does not match `{result_pat}`")));
                    }
                }
                other => return Ok(other),
            }
        }
        let out = sides(clause, f.dagger).1;
        match build(out, &mut env) {
            Some(w) => Ok(Outcome::Value(w)),
            None => Ok(Outcome::Stuck(format!("unbound variable in `{out}` (program not validated)"))),
        }
    }
}

fn sides(c: &Clause, dagger: bool) -> (&Pattern, &Pattern) {
    if dagger {
        (&c.out, &c.lhs)
    } else {
        (&c.lhs, &c.out)
    }
}

fn bind<'a>(p: &'a Pattern, v: &Value, env: &mut HashMap<&'a str, Value>) -> bool {
    match (p, v) {
        (Pattern::Var(x), _) => {
            env.insert(x, v.clone());
            true
        }
        (Pattern::Z, Value::Z) | (Pattern::Nil, Value::Nil) => true,
        (Pattern::Atom(a), Value::Atom(b)) => a == b,
        (Pattern::S(p), Value::S(v)) => bind(p, v, env),
        (Pattern::Cons(p1, p2), Value::Cons(v1, v2)) | (Pattern::Pair(p1, p2), Value::Pair(v1, v2)) => {
            bind(p1, v1, env) && bind(p2, v2, env)
        }
        _ => false,
    }
}

/// Builds the value of a pattern, consuming the variables it uses.
fn build(p: &Pattern, env: &mut HashMap<&str, Value>) -> Option<Value> {
    Some(match p {
        Pattern::Var(x) => env.remove(x.as_str())?,
        Pattern::Z => Value::Z,
        Pattern::Nil => Value::Nil,
        Pattern::Atom(a) => Value::Atom(a.clone()),
        Pattern::S(p) => Value::succ(build(p, env)?),
        Pattern::Cons(a, b) => Value::cons(build(a, env)?, build(b, env)?),
        Pattern::Pair(a, b) => Value::pair(build(a, env)?, build(b, env)?),
    })
}

/// Evaluates `fname` (with its function parameters bound by `bindings`) on
/// `v` with the given fuel. The entry call itself consumes one unit.
///
/// Recursion depth of the host follows the depth of the object-level call
/// stack; callers evaluating deeply recursive programs at large fuel should
/// run on a thread with a generous stack.
pub fn eval(program: &Program, fname: &str, bindings: &Bindings, v: &Value, fuel: u64) -> Result<Outcome> {
    eval_ref(program, &FnRef::new(fname), bindings, v, fuel)
}

/// Like [`eval`], for an entry point given as a function reference, e.g.
/// `add†` or `map<inc>`. Parameters of the referenced definition not given
/// as arguments are looked up in `bindings`.
pub fn eval_ref(program: &Program, entry: &FnRef, bindings: &Bindings, v: &Value, fuel: u64) -> Result<Outcome> {
    let interp = Interp::new(program);
    let f = resolve_entry(&interp, entry, bindings)?;
    interp.call(&f, v.clone(), fuel)
}

fn resolve_entry(interp: &Interp<'_>, entry: &FnRef, bindings: &Bindings) -> Result<Resolved> {
    let &def = interp.index.get(entry.name.as_str()).ok_or_else(|| Error::UnknownFunction(entry.name.clone()))?;
    let params = &interp.program.defs[def].params;
    if !entry.args.is_empty() {
        return interp.resolve(entry, &[], &[]);
    }
    let args = params
        .iter()
        .map(|p| {
            let r = bindings.get(p).ok_or_else(|| Error::UnboundParameter(p.clone()))?;
            interp.resolve(r, &[], &[])
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Resolved { def, args, dagger: entry.dagger })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::{parse, parse_value};

    fn run(src: &str, f: &str, v: &str, fuel: u64) -> Outcome {
        eval(&parse(src).unwrap(), f, &Bindings::new(), &parse_value(v).unwrap(), fuel).unwrap()
    }

    #[test]
    fn stuck_is_distinct_from_undefined() {
        let src = "fun f Z = S Z";
        assert_eq!(run(src, "f", "Nil", 5), Outcome::Stuck("no clause of `f` matches Nil".into()));
        assert_eq!(run(src, "f", "Z", 0), Outcome::Undefined);
        assert_eq!(run(src, "f", "Z", 1), Outcome::Value(Value::nat(1)));
    }

    #[test]
    fn let_pattern_mismatch_is_stuck() {
        let src = "fun g x = S x\nfun f x = let Z = g x in Z";
        assert!(matches!(run(src, "f", "Z", 5), Outcome::Stuck(_)));
    }

    #[test]
    fn missing_binding_is_an_error() {
        let p = parse("fun m<g> x = let y = g x in y").unwrap();
        let err = eval(&p, "m", &Bindings::new(), &Value::Z, 3).unwrap_err();
        assert!(matches!(err, Error::UnboundParameter(ref g) if g == "g"));
        assert!(matches!(eval(&p, "nope", &Bindings::new(), &Value::Z, 3), Err(Error::UnknownFunction(_))));
    }

    #[test]
    fn dagger_call_runs_backwards() {
        let src = "fun inc x = S x\nfun dec x = let y = inc† x in y";
        assert_eq!(run(src, "dec", "S (S Z)", 2), Outcome::Value(Value::nat(1)));
        assert!(matches!(run(src, "dec", "Z", 2), Outcome::Stuck(_)));
    }
}
