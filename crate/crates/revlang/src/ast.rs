//! Syntax trees for programs and the values they compute on.

use std::fmt;

use serde::{Serialize, Serializer};

/// A source position, 1-based.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

/// A finite constructor term.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Value {
    Z,
    S(Box<Value>),
    Nil,
    Cons(Box<Value>, Box<Value>),
    Pair(Box<Value>, Box<Value>),
    Atom(String),
}

impl Value {
    pub fn succ(v: Value) -> Value {
        Value::S(Box::new(v))
    }

    pub fn cons(head: Value, tail: Value) -> Value {
        Value::Cons(Box::new(head), Box::new(tail))
    }

    pub fn pair(a: Value, b: Value) -> Value {
        Value::Pair(Box::new(a), Box::new(b))
    }

    /// The Peano numeral for `n`.
    pub fn nat(n: usize) -> Value {
        (0..n).fold(Value::Z, |acc, _| Value::succ(acc))
    }

    /// A `Cons`/`Nil` list of the given elements.
    pub fn list(items: Vec<Value>) -> Value {
        items
            .into_iter().rev().fold(Value::Nil, |acc, v| Value::cons(v, acc))
    }

    /// Reads back a Peano numeral.
    pub fn as_nat(&self) -> Option<usize> {
        let mut n = 0;
        let mut cur = self;
        loop {
            match cur {
                Value::Z => return Some(n),
                Value::S(inner) => {
                    n += 1;
                    cur = inner;
                }
                _ => return None,
            }
        }
    }

    /// Node count; atoms and nullary constructors count one.
    pub fn size(&self) -> usize {
        match self {
            Value::Z | Value::Nil | Value::Atom(_) => 1,
            Value::S(v) => 1 + v.size(),
            Value::Cons(a, b) | Value::Pair(a, b) => 1 + a.size() + b.size(),
        }
    }

    fn is_application(&self) -> bool {
        matches!(self, Value::S(_) | Value::Cons(..))
    }

    fn fmt_atomic(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_application() {
            write!(f, "({self})")
        } else {
            write!(f, "{self}")
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Z => f.write_str("Z"),
            Value::Nil => f.write_str("Nil"),
            Value::Atom(a) => write!(f, "'{a}"),
            Value::S(v) => {
                f.write_str("S ")?;
                v.fmt_atomic(f)
            }
            Value::Cons(a, b) => {
                f.write_str("Cons ")?;
                a.fmt_atomic(f)?;
                f.write_str(" ")?;
                b.fmt_atomic(f)
            }
            Value::Pair(a, b) => write!(f, "({a}, {b})"),
        }
    }
}

impl Serialize for Value {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// A constructor term over variables. Well-formed patterns are linear.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Pattern {
    Var(String),
    Z,
    S(Box<Pattern>),
    Nil,
    Cons(Box<Pattern>, Box<Pattern>),
    Pair(Box<Pattern>, Box<Pattern>),
    Atom(String),
}

impl Pattern {
    pub fn var(name: &str) -> Pattern {
        Pattern::Var(name.to_string())
    }

    pub fn succ(p: Pattern) -> Pattern {
        Pattern::S(Box::new(p))
    }

    pub fn cons(head: Pattern, tail: Pattern) -> Pattern {
        Pattern::Cons(Box::new(head), Box::new(tail))
    }

    pub fn pair(a: Pattern, b: Pattern) -> Pattern {
        Pattern::Pair(Box::new(a), Box::new(b))
    }

    /// Variables in left-to-right order, with repetitions.
    pub fn vars(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            Pattern::Var(v) => out.push(v),
            Pattern::Z | Pattern::Nil | Pattern::Atom(_) => {}
            Pattern::S(p) => p.collect_vars(out),
            Pattern::Cons(a, b) | Pattern::Pair(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    /// Atom names mentioned by the pattern.
    pub fn atoms(&self) -> Vec<&str> {
        match self {
            Pattern::Atom(a) => vec![a],
            Pattern::Var(_) | Pattern::Z | Pattern::Nil => vec![],
            Pattern::S(p) => p.atoms(),
            Pattern::Cons(a, b) | Pattern::Pair(a, b) => {
                let mut out = a.atoms();
                out.extend(b.atoms());
                out
            }
        }
    }

    /// Whether some value matches both patterns. Variables of the two
    /// patterns are distinct and each pattern is linear, so structural
    /// agreement up to variables is exactly unifiability.
    pub fn unifies_with(&self, other: &Pattern) -> bool {
        match (self, other) {
            (Pattern::Var(_), _) | (_, Pattern::Var(_)) => true,
            (Pattern::Z, Pattern::Z) | (Pattern::Nil, Pattern::Nil) => true,
            (Pattern::Atom(a), Pattern::Atom(b)) => a == b,
            (Pattern::S(a), Pattern::S(b)) => a.unifies_with(b),
            (Pattern::Cons(a1, b1), Pattern::Cons(a2, b2)) | (Pattern::Pair(a1, b1), Pattern::Pair(a2, b2)) => {
                a1.unifies_with(a2) && b1.unifies_with(b2)
            }
            _ => false,
        }
    }

    /// Applies a variable renaming.
    pub fn rename(&self, f: &mut impl FnMut(&str) -> String) -> Pattern {
        match self {
            Pattern::Var(v) => Pattern::Var(f(v)),
            Pattern::Z => Pattern::Z,
            Pattern::Nil => Pattern::Nil,
            Pattern::Atom(a) => Pattern::Atom(a.clone()),
            Pattern::S(p) => Pattern::succ(p.rename(f)),
            Pattern::Cons(a, b) => {
                let a = a.rename(f);
                Pattern::cons(a, b.rename(f))
            }
            Pattern::Pair(a, b) => {
                let a = a.rename(f);
                Pattern::pair(a, b.rename(f))
            }
        }
    }

    fn is_application(&self) -> bool {
        matches!(self, Pattern::S(_) | Pattern::Cons(..))
    }

    pub(crate) fn fmt_atomic(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_application() {
            write!(f, "({self})")
        } else {
            write!(f, "{self}")
        }
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Pattern::Var(v) => f.write_str(v),
            Pattern::Z => f.write_str("Z"),
            Pattern::Nil => f.write_str("Nil"),
            Pattern::Atom(a) => write!(f, "'{a}"),
            Pattern::S(p) => {
                f.write_str("S ")?;
                p.fmt_atomic(f)
            }
            Pattern::Cons(a, b) => {
                f.write_str("Cons ")?;
                a.fmt_atomic(f)?;
                f.write_str(" ")?;
                b.fmt_atomic(f)
            }
            Pattern::Pair(a, b) => write!(f, "({a}, {b})"),
        }
    }
}

/// A reference to a function: a definition applied to static function
/// arguments, or a function parameter in scope, optionally dagger-marked.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FnRef {
    pub name: String,
    pub args: Vec<FnRef>,
    pub dagger: bool,
}

impl FnRef {
    pub fn new(name: &str) -> FnRef {
        FnRef { name: name.to_string(), args: Vec::new(), dagger: false }
    }

    pub fn with_args(mut self, args: Vec<FnRef>) -> FnRef {
        self.args = args;
        self
    }

    pub fn daggered(mut self) -> FnRef {
        self.dagger = !self.dagger;
        self
    }
}

impl fmt::Display for FnRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)?;
        if !self.args.is_empty() {
            f.write_str("<")?;
            for (i, a) in self.args.iter().enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{a}")?;
            }
            f.write_str(">")?;
        }
        if self.dagger {
            f.write_str("†")?;
        }
        Ok(())
    }
}

/// `let pattern = callee arg in ...`
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Let {
    pub pattern: Pattern,
    pub callee: FnRef,
    pub arg: Pattern,
    pub pos: Pos,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Clause {
    pub lhs: Pattern,
    pub lets: Vec<Let>,
    pub out: Pattern,
    pub pos: Pos,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FuncDef {
    pub name: String,
    pub params: Vec<String>,
    pub clauses: Vec<Clause>,
    pub pos: Pos,
}

impl FuncDef {
    fn fmt_head(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "fun {}", self.name)?;
        if !self.params.is_empty() {
            write!(f, "<{}>", self.params.join(", "))?;
        }
        Ok(())
    }
}

impl fmt::Display for FuncDef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for clause in &self.clauses {
            self.fmt_head(f)?;
            f.write_str(" ")?;
            clause.lhs.fmt_atomic(f)?;
            f.write_str(" = ")?;
            for l in &clause.lets {
                write!(f, "let {} = {} ", l.pattern, l.callee)?;
                l.arg.fmt_atomic(f)?;
                f.write_str(" in ")?;
            }
            writeln!(f, "{}", clause.out)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Program {
    pub atoms: Vec<String>,
    pub defs: Vec<FuncDef>,
}

impl Program {
    pub fn def(&self, name: &str) -> Option<&FuncDef> {
        self.defs.iter().find(|d| d.name == name)
    }

    pub fn def_index(&self, name: &str) -> Option<usize> {
        self.defs.iter().position(|d| d.name == name)
    }
}

/// Prints the program in the concrete syntax accepted by the parser.
impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.atoms.is_empty() {
            f.write_str("atoms")?;
            for a in &self.atoms {
                write!(f, " '{a}")?;
            }
            writeln!(f)?;
        }
        for def in &self.defs {
            write!(f, "{def}")?;
        }
        Ok(())
    }
}
