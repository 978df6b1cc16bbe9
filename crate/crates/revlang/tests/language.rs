use dualdag_revlang::programs::{self, ADD, MAP, SWAP};
use dualdag_revlang::{
    eval, invert, parse, parse_value, validate, Bindings, Clause, DiagnosticKind, Error, FnRef, FuncDef, Let,
    Outcome, Pattern, Pos, Program, Value, DEFAULT_SUFFIX,
};
use proptest::prelude::*;

fn strip(mut p: Program) -> Program {
    for def in &mut p.defs {
        def.pos = Pos::default();
        for c in &mut def.clauses {
            c.pos = Pos::default();
            for l in &mut c.lets {
                l.pos = Pos::default();
            }
        }
    }
    p
}

fn clause(lhs: Pattern, lets: Vec<Let>, out: Pattern) -> Clause {
    Clause { lhs, lets, out, pos: Pos::default() }
}

fn var(x: &str) -> Pattern {
    Pattern::var(x)
}

fn pair(a: Pattern, b: Pattern) -> Pattern {
    Pattern::pair(a, b)
}

fn no_bindings() -> Bindings {
    Bindings::new()
}

fn inc_bindings() -> Bindings {
    Bindings::from([("g".to_string(), FnRef::new("inc"))])
}

#[test]
fn swap_parses_to_one_clause() {
    let p = parse(SWAP).unwrap();
    assert_eq!(p.defs.len(), 1);
    assert_eq!(p.defs[0].clauses.len(), 1);
    assert!(validate(&p).is_empty());
}

#[test]
fn add_parses_to_the_hand_built_tree() {
    let expected = Program {
        atoms: vec![],
        defs: vec![FuncDef {
            name: "add".into(),
            params: vec![],
            clauses: vec![
                clause(pair(Pattern::Z, var("y")), vec![], pair(Pattern::Z, var("y"))),
                clause(
                    pair(Pattern::succ(var("x")), var("y")),
                    vec![Let {
                        pattern: pair(var("x2"), var("y2")),
                        callee: FnRef::new("add"),
                        arg: pair(var("x"), var("y")),
                        pos: Pos::default(),
                    }],
                    pair(Pattern::succ(var("x2")), Pattern::succ(var("y2"))),
                ),
            ],
            pos: Pos::default(),
        }],
    };
    assert_eq!(strip(parse(ADD).unwrap()), expected);
}

#[test]
fn map_parses_with_a_static_parameter() {
    let p = parse(MAP).unwrap();
    let map = p.def("map").unwrap();
    assert_eq!(map.params, vec!["g".to_string()]);
    let lets = &map.clauses[1].lets;
    assert_eq!(lets[0].callee, FnRef::new("g"));
    assert_eq!(lets[1].callee, FnRef::new("map").with_args(vec![FnRef::new("g")]));
    assert!(validate(&p).is_empty());
}

#[test]
fn unbalanced_parenthesis_is_a_syntax_error() {
    match parse("fun f (x = x") {
        Err(Error::Syntax { line, col, .. }) => assert_eq!((line, col), (1, 10)),
        other => panic!("expected a syntax error, got {other:?}"),
    }
}

#[test]
fn printed_programs_parse_back_to_themselves() {
    for (_, _, src) in programs::BUNDLED {
        let p = parse(src).unwrap();
        assert_eq!(strip(parse(&p.to_string()).unwrap()), strip(p.clone()));
        let inv = invert(&p, DEFAULT_SUFFIX);
        assert_eq!(strip(parse(&inv.to_string()).unwrap()), strip(inv));
    }
}

#[test]
fn out_overlap_is_reported() {
    let p = parse("fun f Z = Z\nfun f (S x) = let y = f x in Z").unwrap();
    let diags = validate(&p);
    // `y` is bound but unused as well; the overlap is what matters here.
    assert!(diags.iter().any(|d| d.kind == DiagnosticKind::OutOverlap), "{diags:?}");
    let p = parse("fun f Z = Z\nfun f (S x) = Z").unwrap();
    assert!(validate(&p).iter().any(|d| d.kind == DiagnosticKind::OutOverlap));
}

#[test]
fn variable_used_twice_is_a_linearity_violation() {
    let p = parse("fun dup x = (x, x)").unwrap();
    let diags = validate(&p);
    assert_eq!(diags.len(), 1);
    assert_eq!(diags[0].kind, DiagnosticKind::Linearity);
}

#[test]
fn add_one_one_unfolds_in_two_calls() {
    let p = parse(ADD).unwrap();
    let v = parse_value("(S Z, S Z)").unwrap();
    let expected = parse_value("(S Z, S (S Z))").unwrap();
    assert_eq!(eval(&p, "add", &no_bindings(), &v, 10).unwrap(), Outcome::Value(expected.clone()));
    // Two calls: add (S Z, S Z) and add (Z, S Z).
    assert_eq!(eval(&p, "add", &no_bindings(), &v, 2).unwrap(), Outcome::Value(expected));
    assert_eq!(eval(&p, "add", &no_bindings(), &v, 1).unwrap(), Outcome::Undefined);
    assert_eq!(eval(&p, "add", &no_bindings(), &v, 0).unwrap(), Outcome::Undefined);
}

#[test]
fn swap_at_fuel_one() {
    let p = parse(SWAP).unwrap();
    let v = parse_value("(Z, S Z)").unwrap();
    assert_eq!(eval(&p, "swap", &no_bindings(), &v, 1).unwrap(), Outcome::Value(parse_value("(S Z, Z)").unwrap()));
    assert_eq!(eval(&p, "swap", &no_bindings(), &v, 0).unwrap(), Outcome::Undefined);
    assert!(matches!(eval(&p, "swap", &no_bindings(), &Value::Z, 1).unwrap(), Outcome::Stuck(_)));
}

#[test]
fn inverted_add_subtracts() {
    let inv = invert(&parse(ADD).unwrap(), DEFAULT_SUFFIX);
    assert!(validate(&inv).is_empty());
    let w = parse_value("(S Z, S (S Z))").unwrap();
    assert_eq!(eval(&inv, "add_inv", &no_bindings(), &w, 10).unwrap(), Outcome::Value(parse_value("(S Z, S Z)").unwrap()));
    // (2, 1) is not in the image: y < x.
    let w = parse_value("(S (S Z), S Z)").unwrap();
    assert!(matches!(eval(&inv, "add_inv", &no_bindings(), &w, 10).unwrap(), Outcome::Stuck(_)));
}

#[test]
fn map_inc_increments_every_element() {
    let p = parse(MAP).unwrap();
    let v = Value::list(vec![Value::nat(0), Value::nat(3), Value::nat(1)]);
    let out = eval(&p, "map", &inc_bindings(), &v, 100).unwrap();
    assert_eq!(out, Outcome::Value(Value::list(vec![Value::nat(1), Value::nat(4), Value::nat(2)])));
    // The parameter must be bound.
    assert!(matches!(eval(&p, "map", &no_bindings(), &v, 100), Err(Error::UnboundParameter(_))));
}

#[test]
fn printed_values_use_the_literal_syntax() {
    for src in ["Z", "S (S Z)", "(S Z, Nil)", "Cons (S Z) (Cons Z Nil)", "'a", "((Z, Z), S (Z, Nil))"] {
        let v = parse_value(src).unwrap();
        assert_eq!(v.to_string(), src);
    }
}

proptest! {
    /// `add (a, b)` is `(a, a + b)`, and needs exactly `a + 1` calls.
    #[test]
    fn add_matches_arithmetic(a in 0usize..40, b in 0usize..40) {
        let p = parse(ADD).unwrap();
        let v = Value::pair(Value::nat(a), Value::nat(b));
        let expected = Value::pair(Value::nat(a), Value::nat(a + b));
        let needed = a as u64 + 1;
        prop_assert_eq!(eval(&p, "add", &no_bindings(), &v, needed).unwrap(), Outcome::Value(expected));
        prop_assert_eq!(eval(&p, "add", &no_bindings(), &v, needed - 1).unwrap(), Outcome::Undefined);
    }

    /// `map<inc>` recurses once per cons cell and once more for `Nil`; each
    /// `inc` call sits one level below its cons cell, no deeper than `Nil`.
    #[test]
    fn map_inc_matches_the_list_oracle(xs in proptest::collection::vec(0usize..6, 0..8)) {
        let p = parse(MAP).unwrap();
        let v = Value::list(xs.iter().map(|&n| Value::nat(n)).collect());
        let expected = Value::list(xs.iter().map(|&n| Value::nat(n + 1)).collect());
        let needed = xs.len() as u64 + 1;
        prop_assert_eq!(eval(&p, "map", &inc_bindings(), &v, needed).unwrap(), Outcome::Value(expected));
        prop_assert_eq!(eval(&p, "map", &inc_bindings(), &v, needed - 1).unwrap(), Outcome::Undefined);
    }
}
