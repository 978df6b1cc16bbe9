//! Static checks that make every definition denote a partial injection:
//! linearity, pairwise non-overlap of left- and right-hand sides, and name
//! and arity resolution.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::ast::{Clause, FnRef, FuncDef, Pattern, Pos, Program};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DiagnosticKind {
    Linearity,
    LhsOverlap,
    OutOverlap,
    UnknownName,
    Arity,
    UndeclaredAtom,
    DuplicateParameter,
}

impl fmt::Display for DiagnosticKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DiagnosticKind::Linearity => "linearity",
            DiagnosticKind::LhsOverlap => "lhs-overlap",
            DiagnosticKind::OutOverlap => "out-overlap",
            DiagnosticKind::UnknownName => "unknown-name",
            DiagnosticKind::Arity => "arity",
            DiagnosticKind::UndeclaredAtom => "undeclared-atom",
            DiagnosticKind::DuplicateParameter => "duplicate-parameter",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub kind: DiagnosticKind,
    pub function: String,
    #[serde(serialize_with = "ser_pos")]
    pub pos: Pos,
    pub message: String,
}

fn ser_pos<S: serde::Serializer>(pos: &Pos, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(pos)
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [{}] in `{}`: {}", self.pos, self.kind, self.function, self.message)
    }
}

/// Checks every definition; an empty result means the program is valid.
pub fn validate(program: &Program) -> Vec<Diagnostic> {
    let mut diags = Vec::new();
    for def in &program.defs {
        let mut push = |kind, pos, message: String| {
            diags.push(Diagnostic { kind, function: def.name.clone(), pos, message });
        };
        let mut seen = BTreeSet::new();
        for p in &def.params {
            if !seen.insert(p) {
                push(DiagnosticKind::DuplicateParameter, def.pos, format!("parameter `{p}` declared twice"));
            }
            if program.def(p).is_some() {
                push(DiagnosticKind::DuplicateParameter, def.pos, format!("parameter `{p}` shadows a definition"));
            }
        }
        for clause in &def.clauses {
            check_linearity(clause, &mut push);
            check_atoms(program, clause, &mut push);
            for l in &clause.lets {
                check_fnref(program, def, &l.callee, l.pos, &mut push);
            }
        }
        for (i, a) in def.clauses.iter().enumerate() {
            for b in &def.clauses[i + 1..] {
                if a.lhs.unifies_with(&b.lhs) {
                    push(
                        DiagnosticKind::LhsOverlap,
                        b.pos,
                        format!("left-hand sides `{}` ({}) and `{}` overlap", a.lhs, a.pos, b.lhs),
                    );
                }
                if a.out.unifies_with(&b.out) {
                    push(
                        DiagnosticKind::OutOverlap,
                        b.pos,
                        format!("outputs `{}` ({}) and `{}` overlap", a.out, a.pos, b.out),
                    );
                }
            }
        }
    }
    diags
}

fn check_linearity(clause: &Clause, push: &mut impl FnMut(DiagnosticKind, Pos, String)) {
    // `live` holds variables bound and not yet used; `bound` every variable bound so far.
    let mut live: BTreeSet<&str> = BTreeSet::new();
    let mut bound: BTreeSet<&str> = BTreeSet::new();
    let mut errors: Vec<(Pos, String)> = Vec::new();
    let mut steps: Vec<(&Pattern, Pos, bool)> = vec![(&clause.lhs, clause.pos, true)];
    for l in &clause.lets {
        steps.push((&l.arg, l.pos, false));
        steps.push((&l.pattern, l.pos, true));
    }
    steps.push((&clause.out, clause.pos, false));
    for (pattern, pos, binds) in steps {
        for v in pattern.vars() {
            if binds {
                if !bound.insert(v) {
                    errors.push((pos, format!("variable `{v}` is bound more than once")));
                }
                live.insert(v);
            } else if !live.remove(v) {
                errors.push((pos, format!("variable `{v}` is used but not available (unbound or already used)")));
            }
        }
    }
    for v in live {
        errors.push((clause.pos, format!("variable `{v}` is bound but never used")));
    }
    for (pos, message) in errors {
        push(DiagnosticKind::Linearity, pos, message);
    }
}

fn check_atoms(program: &Program, clause: &Clause, push: &mut impl FnMut(DiagnosticKind, Pos, String)) {
    let mut patterns = vec![&clause.lhs, &clause.out];
    for l in &clause.lets {
        patterns.push(&l.pattern);
        patterns.push(&l.arg);
    }
    for p in patterns {
        for a in p.atoms() {
            if !program.atoms.iter().any(|d| d == a) {
                push(DiagnosticKind::UndeclaredAtom, clause.pos, format!("atom `'{a}` is not declared"));
            }
        }
    }
}

fn check_fnref(program: &Program, def: &FuncDef, r: &FnRef, pos: Pos, push: &mut impl FnMut(DiagnosticKind, Pos, String)) {
    if def.params.contains(&r.name) {
        if !r.args.is_empty() {
            push(DiagnosticKind::Arity, pos, format!("parameter `{}` takes no function arguments", r.name));
        }
        return;
    }
    match program.def(&r.name) {
        None => push(DiagnosticKind::UnknownName, pos, format!("`{}` is neither a definition nor a parameter", r.name)),
        Some(target) if target.params.len() != r.args.len() => push(
            DiagnosticKind::Arity,
            pos,
            format!("`{}` expects {} function argument(s), got {}", r.name, target.params.len(), r.args.len()),
        ),
        Some(_) => {
            for a in &r.args {
                check_fnref(program, def, a, pos, push);
            }
        }
    }
}
