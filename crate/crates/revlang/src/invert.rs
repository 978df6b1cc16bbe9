//! The syntactic inverter and α-equivalence.
//!
//! Inversion is clause-local: each clause swaps its left- and right-hand
//! sides and runs its lets in reverse, each call replaced by a call to the
//! inverse. An inverted definition `f_inv<g>` takes the same function
//! arguments as `f<g>` and satisfies `f_inv<g> = (f<g>)†`; so inside it a
//! parameter call `g` becomes `g†`, and a static argument `k` naming a
//! definition becomes `k_inv†` (which denotes `k`) so that the inverted
//! program is self-contained.

use std::collections::HashMap;

use crate::ast::{Clause, FnRef, FuncDef, Let, Program};
use crate::eval::Bindings;

pub const DEFAULT_SUFFIX: &str = "_inv";

/// Inverts every definition, appending `suffix` to each name.
pub fn invert(program: &Program, suffix: &str) -> Program {
    let defs = program
        .defs
        .iter()
        .map(|def| FuncDef {
            name: format!("{}{suffix}", def.name),
            params: def.params.clone(),
            clauses: def.clauses.iter().map(|c| invert_clause(c, &def.params, suffix)).collect(),
            pos: def.pos,
        })
        .collect();
    Program { atoms: program.atoms.clone(), defs }
}

fn invert_clause(c: &Clause, params: &[String], suffix: &str) -> Clause {
    let lets = c
        .lets
        .iter()
        .rev()
        .map(|l| Let { pattern: l.arg.clone(), callee: invert_callee(&l.callee, params, suffix), arg: l.pattern.clone(), pos: l.pos })
        .collect();
    Clause { lhs: c.out.clone(), lets, out: c.lhs.clone(), pos: c.pos }
}

fn invert_callee(r: &FnRef, params: &[String], suffix: &str) -> FnRef {
    if params.contains(&r.name) {
        return FnRef { name: r.name.clone(), args: Vec::new(), dagger: !r.dagger };
    }
    FnRef {
        name: format!("{}{suffix}", r.name),
        args: r.args.iter().map(|a| translate_arg(a, params, suffix)).collect(),
        dagger: r.dagger,
    }
}

/// A static argument keeps its meaning under inversion: parameters pass
/// through, and a definition `k` is renamed to `k_inv†`.
fn translate_arg(r: &FnRef, params: &[String], suffix: &str) -> FnRef {
    if params.contains(&r.name) {
        return r.clone();
    }
    FnRef {
        name: format!("{}{suffix}", r.name),
        args: r.args.iter().map(|a| translate_arg(a, params, suffix)).collect(),
        dagger: !r.dagger,
    }
}

/// Bindings for the inverted program that denote the same functions as
/// `bindings` do for the original.
pub fn invert_bindings(bindings: &Bindings, suffix: &str) -> Bindings {
    bindings.iter().map(|(k, r)| (k.clone(), translate_arg(r, &[], suffix))).collect()
}

/// Structural equality after canonical renaming of definitions (by
/// position), parameters (by position) and variables (by order of binding).
pub fn alpha_equivalent(a: &Program, b: &Program) -> bool {
    let mut atoms_a = a.atoms.clone();
    let mut atoms_b = b.atoms.clone();
    atoms_a.sort();
    atoms_b.sort();
    atoms_a == atoms_b && canonical(a) == canonical(b)
}

/// The canonical form as source text; positions play no part.
pub fn canonical(program: &Program) -> String {
    let names: HashMap<&str, String> =
        program.defs.iter().enumerate().map(|(i, d)| (d.name.as_str(), format!("f{i}"))).collect();
    let defs = program
        .defs
        .iter()
        .map(|def| {
            let params: HashMap<&str, String> =
                def.params.iter().enumerate().map(|(i, p)| (p.as_str(), format!("g{i}"))).collect();
            let rename_ref = |r: &FnRef| rename_fnref(r, &names, &params);
            let clauses = def
                .clauses
                .iter()
                .map(|c| {
                    let mut vars: HashMap<String, String> = HashMap::new();
                    let mut fresh = |v: &str| {
                        let n = vars.len();
                        vars.entry(v.to_string()).or_insert_with(|| format!("v{n}")).clone()
                    };
                    let lhs = c.lhs.rename(&mut fresh);
                    let mut lets = Vec::new();
                    for l in &c.lets {
                        let arg = l.arg.rename(&mut fresh);
                        let pattern = l.pattern.rename(&mut fresh);
                        lets.push(Let { pattern, callee: rename_ref(&l.callee), arg, pos: Default::default() });
                    }
                    let out = c.out.rename(&mut fresh);
                    Clause { lhs, lets, out, pos: Default::default() }
                })
                .collect();
            FuncDef {
                name: names[def.name.as_str()].clone(),
                params: (0..def.params.len()).map(|i| format!("g{i}")).collect(),
                clauses,
                pos: Default::default(),
            }
        })
        .collect();
    Program { atoms: Vec::new(), defs }.to_string()
}

fn rename_fnref(r: &FnRef, names: &HashMap<&str, String>, params: &HashMap<&str, String>) -> FnRef {
    let name = params
        .get(r.name.as_str())
        .or_else(|| names.get(r.name.as_str()))
        .cloned()
        .unwrap_or_else(|| format!("?{}", r.name));
    FnRef { name, args: r.args.iter().map(|a| rename_fnref(a, names, params)).collect(), dagger: r.dagger }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse;

    #[test]
    fn swap_inverts_to_itself_up_to_renaming() {
        let p = parse("fun swap (a, b) = (b, a)").unwrap();
        let inv = invert(&p, DEFAULT_SUFFIX);
        assert_eq!(inv.to_string(), "fun swap_inv (b, a) = (a, b)\n");
        assert!(alpha_equivalent(&p, &inv));
    }

    #[test]
    fn lets_are_reversed_and_calls_renamed() {
        let p = parse("fun map<g> (Cons x xs) = let y = g x in let ys = map<g> xs in Cons y ys").unwrap();
        let inv = invert(&p, DEFAULT_SUFFIX);
        assert_eq!(inv.to_string(), "fun map_inv<g> (Cons y ys) = let xs = map_inv<g> ys in let x = g† y in Cons x xs\n");
    }

    #[test]
    fn static_definition_arguments_are_translated() {
        let p = parse("fun inc x = S x\nfun m<g> x = let y = g x in y\nfun h x = let y = m<inc> x in y").unwrap();
        let inv = invert(&p, "_r");
        assert!(inv.to_string().contains("let x = m_r<inc_r†> y in x"), "{inv}");
        let twice = invert(&inv, "_r");
        assert!(alpha_equivalent(&p, &twice));
        assert!(!alpha_equivalent(&p, &inv));
    }

    #[test]
    fn variable_names_do_not_matter() {
        let a = parse("fun f (S x) = let y = f x in S y").unwrap();
        let b = parse("fun g (S p) = let q = g p in S q").unwrap();
        let c = parse("fun f (S x) = let y = f x in S (S y)").unwrap();
        assert!(alpha_equivalent(&a, &b));
        assert!(!alpha_equivalent(&a, &c));
    }
}
