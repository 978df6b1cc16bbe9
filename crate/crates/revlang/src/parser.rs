//! Lexer and recursive-descent parser for `.rvl` sources and value literals.
//!
//! ```text
//! program  ::= (atoms | clause)*
//! atoms    ::= "atoms" ATOM*
//! clause   ::= "fun" NAME params? apat "=" body
//! params   ::= "<" NAME ("," NAME)* ">"
//! body     ::= "let" pat "=" fnref apat "in" body | pat
//! fnref    ::= NAME ("<" fnref ("," fnref)* ">")? ("†" | "^")?
//! pat      ::= "S" apat | "Cons" apat apat | apat
//! apat     ::= NAME | "Z" | "Nil" | ATOM | "(" pat ("," pat)* ")"
//! ```
//!
//! Tuples with more than two components nest to the right. Clauses sharing a
//! name are grouped into one definition in order of first appearance.

use crate::ast::{Clause, FnRef, FuncDef, Let, Pattern, Pos, Program, Value};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Atom(String),
    Fun,
    Let,
    In,
    Atoms,
    Z,
    S,
    Nil,
    Cons,
    LParen,
    RParen,
    Comma,
    Eq,
    Lt,
    Gt,
    Dagger,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Atom(s) => format!("atom `'{s}`"),
            Tok::Eof => "end of input".into(),
            other => format!("`{}`", other.symbol()),
        }
    }

    fn symbol(&self) -> &'static str {
        match self {
            Tok::Fun => "fun",
            Tok::Let => "let",
            Tok::In => "in",
            Tok::Atoms => "atoms",
            Tok::Z => "Z",
            Tok::S => "S",
            Tok::Nil => "Nil",
            Tok::Cons => "Cons",
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::Comma => ",",
            Tok::Eq => "=",
            Tok::Lt => "<",
            Tok::Gt => ">",
            Tok::Dagger => "†",
            Tok::Ident(_) | Tok::Atom(_) | Tok::Eof => "",
        }
    }
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

fn lex(src: &str) -> Result<Vec<(Tok, Pos)>> {
    let mut out = Vec::new();
    let mut chars = src.chars().peekable();
    let (mut line, mut col) = (1, 1);
    macro_rules! bump {
        () => {{
            let c = chars.next();
            if c == Some('\n') {
                line += 1;
                col = 1;
            } else if c.is_some() {
                col += 1;
            }
            c
        }};
    }
    while let Some(&c) = chars.peek() {
        let pos = Pos { line, col };
        if c.is_whitespace() {
            bump!();
            continue;
        }
        if c == '-' {
            bump!();
            if chars.peek() == Some(&'-') {
                while chars.peek().is_some_and(|&c| c != '\n') {
                    bump!();
                }
                continue;
            }
            return Err(syntax(pos, "unexpected `-` (comments start with `--`)"));
        }
        let tok = match c {
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ',' => Tok::Comma,
            '=' => Tok::Eq,
            '<' => Tok::Lt,
            '>' => Tok::Gt,
            '†' | '^' => Tok::Dagger,
            '\'' => {
                bump!();
                let mut name = String::new();
                while chars.peek().is_some_and(|&c| is_ident_char(c) && c != '\'') {
                    name.push(bump!().unwrap());
                }
                if name.is_empty() {
                    return Err(syntax(pos, "expected an atom name after `'`"));
                }
                out.push((Tok::Atom(name), pos));
                continue;
            }
            c if is_ident_start(c) => {
                let mut name = String::new();
                while chars.peek().is_some_and(|&c| is_ident_char(c)) {
                    name.push(bump!().unwrap());
                }
                let tok = match name.as_str() {
                    "fun" => Tok::Fun,
                    "let" => Tok::Let,
                    "in" => Tok::In,
                    "atoms" => Tok::Atoms,
                    "Z" => Tok::Z,
                    "S" => Tok::S,
                    "Nil" => Tok::Nil,
                    "Cons" => Tok::Cons,
                    _ => Tok::Ident(name),
                };
                out.push((tok, pos));
                continue;
            }
            other => return Err(syntax(pos, &format!("unexpected character `{other}`"))),
        };
        bump!();
        out.push((tok, pos));
    }
    out.push((Tok::Eof, Pos { line, col }));
    Ok(out)
}

fn syntax(pos: Pos, message: &str) -> Error {
    Error::Syntax { line: pos.line, col: pos.col, message: message.to_string() }
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
    /// Whether identifiers are allowed in patterns (false for value literals).
    allow_vars: bool,
}

impl Parser {
    fn new(src: &str, allow_vars: bool) -> Result<Parser> {
        Ok(Parser { toks: lex(src)?, at: 0, allow_vars })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn next(&mut self) -> Tok {
        let tok = self.toks[self.at].0.clone();
        if tok != Tok::Eof {
            self.at += 1;
        }
        tok
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == tok {
            self.next();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: Tok) -> Result<()> {
        if self.eat(&tok) {
            Ok(())
        } else {
            Err(self.unexpected(&format!("`{}`", tok.symbol())))
        }
    }

    fn unexpected(&self, wanted: &str) -> Error {
        syntax(self.pos(), &format!("expected {wanted}, found {}", self.peek().describe()))
    }

    fn ident(&mut self) -> Result<String> {
        match self.peek().clone() {
            Tok::Ident(name) => {
                self.next();
                Ok(name)
            }
            _ => Err(self.unexpected("a name")),
        }
    }

    fn program(&mut self) -> Result<Program> {
        let mut program = Program::default();
        loop {
            match self.peek() {
                Tok::Eof => return Ok(program),
                Tok::Atoms => {
                    self.next();
                    while let Tok::Atom(a) = self.peek().clone() {
                        self.next();
                        if !program.atoms.contains(&a) {
                            program.atoms.push(a);
                        }
                    }
                }
                Tok::Fun => self.clause(&mut program)?,
                _ => return Err(self.unexpected("`fun` or `atoms`")),
            }
        }
    }

    fn clause(&mut self, program: &mut Program) -> Result<()> {
        let pos = self.pos();
        self.expect(Tok::Fun)?;
        let name = self.ident()?;
        let mut params = Vec::new();
        if self.eat(&Tok::Lt) {
            loop {
                params.push(self.ident()?);
                if !self.eat(&Tok::Comma) {
                    break;
                }
            }
            self.expect(Tok::Gt)?;
        }
        let lhs = self.atomic_pattern()?;
        self.expect(Tok::Eq)?;
        let mut lets = Vec::new();
        while self.peek() == &Tok::Let {
            let let_pos = self.pos();
            self.next();
            let pattern = self.pattern()?;
            self.expect(Tok::Eq)?;
            let callee = self.fnref()?;
            let arg = self.atomic_pattern()?;
            self.expect(Tok::In)?;
            lets.push(Let { pattern, callee, arg, pos: let_pos });
        }
        let out = self.pattern()?;
        if !matches!(self.peek(), Tok::Fun | Tok::Atoms | Tok::Eof) {
            return Err(self.unexpected("the start of a new definition"));
        }
        let clause = Clause { lhs, lets, out, pos };
        match program.defs.iter_mut().find(|d| d.name == name) {
            Some(def) if def.params != params => Err(syntax(
                pos,
                &format!("clause of `{name}` declares parameters <{}> but earlier clauses declare <{}>", params.join(", "), def.params.join(", ")),
            )),
            Some(def) => {
                def.clauses.push(clause);
                Ok(())
            }
            None => {
                program.defs.push(FuncDef { name, params, clauses: vec![clause], pos });
                Ok(())
            }
        }
    }

    fn fnref(&mut self) -> Result<FnRef> {
        let name = self.ident()?;
        let mut args = Vec::new();
        if self.eat(&Tok::Lt) {
            loop {
                args.push(self.fnref()?);
                if !self.eat(&Tok::Comma) {
                    break;
                }
            }
            self.expect(Tok::Gt)?;
        }
        let dagger = self.eat(&Tok::Dagger);
        Ok(FnRef { name, args, dagger })
    }

    fn pattern(&mut self) -> Result<Pattern> {
        match self.peek() {
            Tok::S => {
                self.next();
                Ok(Pattern::succ(self.atomic_pattern()?))
            }
            Tok::Cons => {
                self.next();
                let head = self.atomic_pattern()?;
                Ok(Pattern::cons(head, self.atomic_pattern()?))
            }
            _ => self.atomic_pattern(),
        }
    }

    fn atomic_pattern(&mut self) -> Result<Pattern> {
        let pos = self.pos();
        match self.next() {
            Tok::Ident(name) if self.allow_vars => Ok(Pattern::Var(name)),
            Tok::Ident(name) => Err(syntax(pos, &format!("variable `{name}` is not allowed in a value"))),
            Tok::Z => Ok(Pattern::Z),
            Tok::Nil => Ok(Pattern::Nil),
            Tok::Atom(a) => Ok(Pattern::Atom(a)),
            Tok::LParen => {
                let mut items = vec![self.pattern()?];
                while self.eat(&Tok::Comma) {
                    items.push(self.pattern()?);
                }
                self.expect(Tok::RParen)?;
                let last = items.pop().expect("at least one component");
                Ok(items.into_iter().rev().fold(last, |acc, p| Pattern::pair(p, acc)))
            }
            _ => {
                self.at -= 1;
                Err(self.unexpected("a pattern"))
            }
        }
    }

    fn finish(&mut self) -> Result<()> {
        if self.peek() == &Tok::Eof {
            Ok(())
        } else {
            Err(self.unexpected("end of input"))
        }
    }
}

/// Parses a program source.
pub fn parse(src: &str) -> Result<Program> {
    Parser::new(src, true)?.program()
}

/// Parses a value literal such as `(S Z, Cons 'a Nil)`.
pub fn parse_value(src: &str) -> Result<Value> {
    let mut p = Parser::new(src, false)?;
    let pat = p.pattern()?;
    p.finish()?;
    Ok(to_value(&pat))
}

/// Parses a function reference such as `inc`, `map<inc>` or `inc†`.
pub fn parse_fnref(src: &str) -> Result<FnRef> {
    let mut p = Parser::new(src, true)?;
    let r = p.fnref()?;
    p.finish()?;
    Ok(r)
}

fn to_value(p: &Pattern) -> Value {
    match p {
        Pattern::Var(_) => unreachable!("value literals contain no variables"),
        Pattern::Z => Value::Z,
        Pattern::Nil => Value::Nil,
        Pattern::Atom(a) => Value::Atom(a.clone()),
        Pattern::S(p) => Value::succ(to_value(p)),
        Pattern::Cons(a, b) => Value::cons(to_value(a), to_value(b)),
        Pattern::Pair(a, b) => Value::pair(to_value(a), to_value(b)),
    }
}
