//! JSON documents for functionals.
//!
//! ```json
//! {"op":"joinwith","m":{...},"inner":{"op":"postcompose","m":{...}}}
//! ```
//!
//! Every unary op accepts an optional `inner` op that runs first, so the
//! example reads h ↦ (m₂ ∘ h) ∨ m₁. A file is either a bare op, whose
//! endo hom-set is inferred from its morphism leaves, or
//! `{"space": {"category":..,"src":..,"dst":..}, "functional": op}`.
//! Parametrized functionals use
//! `{"x_space": .., "p_space": .., "body": pop}` where `pop` is one of
//! `argx`, `argp`, `const`, `map{f,arg}`, `join{left,right}`,
//! `sum{left,right}` or `compose{after,before}`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::expr::{Functional, FunctionalExpr};
use super::param::{ParamExpr, ParamFunctionalExpr};
use crate::dagcat::{HomSpace, Morphism};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "lowercase", deny_unknown_fields)]
pub enum FunctionalDoc {
    Const {
        m: Morphism,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        inner: Option<Box<FunctionalDoc>>,
    },
    Identity {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        inner: Option<Box<FunctionalDoc>>,
    },
    Precompose {
        m: Morphism,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        inner: Option<Box<FunctionalDoc>>,
    },
    Postcompose {
        m: Morphism,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        inner: Option<Box<FunctionalDoc>>,
    },
    Dagger {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        inner: Option<Box<FunctionalDoc>>,
    },
    Joinwith {
        m: Morphism,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        inner: Option<Box<FunctionalDoc>>,
    },
    Addwith {
        m: Morphism,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        inner: Option<Box<FunctionalDoc>>,
    },
    Seq {
        first: Box<FunctionalDoc>,
        then: Box<FunctionalDoc>,
    },
    Joinof {
        left: Box<FunctionalDoc>,
        right: Box<FunctionalDoc>,
    },
}

impl FunctionalDoc {
    pub fn to_functional(&self) -> Functional {
        let (op, inner) = match self {
            FunctionalDoc::Const { m, inner } => (Functional::Const(m.clone()), inner),
            FunctionalDoc::Identity { inner } => (Functional::Identity, inner),
            FunctionalDoc::Precompose { m, inner } => (Functional::PreCompose(m.clone()), inner),
            FunctionalDoc::Postcompose { m, inner } => (Functional::PostCompose(m.clone()), inner),
            FunctionalDoc::Dagger { inner } => (Functional::Dagger, inner),
            FunctionalDoc::Joinwith { m, inner } => (Functional::JoinWith(m.clone()), inner),
            FunctionalDoc::Addwith { m, inner } => (Functional::AddWith(m.clone()), inner),
            FunctionalDoc::Seq { first, then } => {
                return Functional::seq(first.to_functional(), then.to_functional())
            }
            FunctionalDoc::Joinof { left, right } => {
                return Functional::join_of(left.to_functional(), right.to_functional())
            }
        };
        match inner {
            Some(inner) => Functional::seq(inner.to_functional(), op),
            None => op,
        }
    }

    pub fn from_functional(f: &Functional) -> Result<FunctionalDoc> {
        let unary = |d: FunctionalDoc| Ok(d);
        match f {
            Functional::Const(m) => unary(FunctionalDoc::Const { m: m.clone(), inner: None }),
            Functional::Identity => unary(FunctionalDoc::Identity { inner: None }),
            Functional::PreCompose(m) => unary(FunctionalDoc::Precompose { m: m.clone(), inner: None }),
            Functional::PostCompose(m) => unary(FunctionalDoc::Postcompose { m: m.clone(), inner: None }),
            Functional::Dagger => unary(FunctionalDoc::Dagger { inner: None }),
            Functional::JoinWith(m) => unary(FunctionalDoc::Joinwith { m: m.clone(), inner: None }),
            Functional::AddWith(m) => unary(FunctionalDoc::Addwith { m: m.clone(), inner: None }),
            Functional::Seq(a, b) => Ok(FunctionalDoc::Seq {
                first: Box::new(Self::from_functional(a)?),
                then: Box::new(Self::from_functional(b)?),
            }),
            Functional::JoinOf(a, b) => Ok(FunctionalDoc::Joinof {
                left: Box::new(Self::from_functional(a)?),
                right: Box::new(Self::from_functional(b)?),
            }),
            Functional::Host(h) => Err(Error::Document(format!(
                "host functional `{}` has no document form",
                h.name()
            ))),
        }
    }
}

fn collect_leaves(f: &Functional, out: &mut Vec<Morphism>) {
    match f {
        Functional::Const(m)
        | Functional::PreCompose(m)
        | Functional::PostCompose(m)
        | Functional::JoinWith(m)
        | Functional::AddWith(m) => out.push(m.clone()),
        Functional::Seq(a, b) | Functional::JoinOf(a, b) => {
            collect_leaves(a, out);
            collect_leaves(b, out);
        }
        Functional::Identity | Functional::Dagger | Functional::Host(_) => {}
    }
}

/// Endo hom-sets built from the objects mentioned by morphism leaves, tried in
/// order of first mention.
fn infer_endo_space(f: &Functional) -> Result<FunctionalExpr> {
    let mut leaves = Vec::new();
    collect_leaves(f, &mut leaves);
    let Some(first) = leaves.first() else {
        return Err(Error::Document(
            "cannot infer the hom-set of a functional without morphisms; wrap it as {\"space\":..,\"functional\":..}"
                .into(),
        ));
    };
    let category = first.category();
    let mut objects = Vec::new();
    for m in &leaves {
        for o in [m.src(), m.dst()] {
            if !objects.contains(o) {
                objects.push(o.clone());
            }
        }
    }
    let mut tried = BTreeSet::new();
    for src in &objects {
        for dst in &objects {
            let Ok(space) = HomSpace::new(category, src.clone(), dst.clone()) else {
                continue;
            };
            if !tried.insert(space.clone()) {
                continue;
            }
            if let Ok(expr) = FunctionalExpr::endo(space, f.clone()) {
                return Ok(expr);
            }
        }
    }
    Err(Error::Document(
        "no hom-set makes this functional an endo-functional".into(),
    ))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TypedFunctionalDoc {
    space: HomSpace,
    functional: FunctionalDoc,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum FunctionalFile {
    Typed(TypedFunctionalDoc),
    Bare(FunctionalDoc),
}

/// Parses a functional document and types it as an endo-functional.
pub fn functional_from_json(text: &str) -> Result<FunctionalExpr> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| Error::Document(e.to_string()))?;
    let typed = value.get("space").is_some();
    let file = if typed {
        FunctionalFile::Typed(serde_json::from_value(value).map_err(|e| Error::Document(e.to_string()))?)
    } else {
        FunctionalFile::Bare(serde_json::from_value(value).map_err(|e| Error::Document(e.to_string()))?)
    };
    match file {
        FunctionalFile::Typed(doc) => FunctionalExpr::new(doc.space, doc.functional.to_functional()),
        FunctionalFile::Bare(doc) => infer_endo_space(&doc.to_functional()),
    }
}

pub fn functional_to_json(expr: &FunctionalExpr) -> Result<String> {
    let doc = TypedFunctionalDoc {
        space: expr.domain().clone(),
        functional: FunctionalDoc::from_functional(expr.body())?,
    };
    Ok(serde_json::to_string(&doc).expect("functional documents always serialize"))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "lowercase", deny_unknown_fields)]
pub enum ParamDoc {
    Argx,
    Argp,
    Const { m: Morphism },
    Map { f: FunctionalDoc, arg: Box<ParamDoc> },
    Join { left: Box<ParamDoc>, right: Box<ParamDoc> },
    Sum { left: Box<ParamDoc>, right: Box<ParamDoc> },
    Compose { after: Box<ParamDoc>, before: Box<ParamDoc> },
}

impl ParamDoc {
    pub fn to_expr(&self) -> ParamExpr {
        match self {
            ParamDoc::Argx => ParamExpr::ArgX,
            ParamDoc::Argp => ParamExpr::ArgP,
            ParamDoc::Const { m } => ParamExpr::Const(m.clone()),
            ParamDoc::Map { f, arg } => ParamExpr::map(f.to_functional(), arg.to_expr()),
            ParamDoc::Join { left, right } => ParamExpr::join(left.to_expr(), right.to_expr()),
            ParamDoc::Sum { left, right } => ParamExpr::sum(left.to_expr(), right.to_expr()),
            ParamDoc::Compose { after, before } => ParamExpr::compose(after.to_expr(), before.to_expr()),
        }
    }

    pub fn from_expr(e: &ParamExpr) -> Result<ParamDoc> {
        let b = |e: &ParamExpr| Self::from_expr(e).map(Box::new);
        Ok(match e {
            ParamExpr::ArgX => ParamDoc::Argx,
            ParamExpr::ArgP => ParamDoc::Argp,
            ParamExpr::Const(m) => ParamDoc::Const { m: m.clone() },
            ParamExpr::Map(f, arg) => ParamDoc::Map {
                f: FunctionalDoc::from_functional(f)?,
                arg: b(arg)?,
            },
            ParamExpr::Join(l, r) => ParamDoc::Join { left: b(l)?, right: b(r)? },
            ParamExpr::Sum(l, r) => ParamDoc::Sum { left: b(l)?, right: b(r)? },
            ParamExpr::Compose(a, c) => ParamDoc::Compose { after: b(a)?, before: b(c)? },
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamFunctionalDoc {
    pub x_space: HomSpace,
    pub p_space: HomSpace,
    pub body: ParamDoc,
}

pub fn param_functional_from_json(text: &str) -> Result<ParamFunctionalExpr> {
    let doc: ParamFunctionalDoc = serde_json::from_str(text).map_err(|e| Error::Document(e.to_string()))?;
    ParamFunctionalExpr::new(doc.x_space, doc.p_space, doc.body.to_expr())
}

pub fn param_functional_to_json(psi: &ParamFunctionalExpr) -> Result<String> {
    let doc = ParamFunctionalDoc {
        x_space: psi.x_space().clone(),
        p_space: psi.p_space().clone(),
        body: ParamDoc::from_expr(psi.body())?,
    };
    Ok(serde_json::to_string(&doc).expect("functional documents always serialize"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dagcat::Category;

    const CLOSURE: &str = r#"{"op":"joinwith","m":{"type":"rel","src":3,"dst":3,"pairs":[[0,1],[1,2]]},
        "inner":{"op":"postcompose","m":{"type":"rel","src":3,"dst":3,"pairs":[[0,1],[1,2]]}}}"#;

    #[test]
    fn bare_document_infers_its_space() {
        let phi = functional_from_json(CLOSURE).unwrap();
        assert_eq!(*phi.domain(), HomSpace::new(Category::Rel, 3, 3).unwrap());
        assert!(matches!(phi.body(), Functional::Seq(..)));
    }

    #[test]
    fn typed_document_round_trips() {
        let phi = functional_from_json(CLOSURE).unwrap();
        let text = functional_to_json(&phi).unwrap();
        assert_eq!(functional_from_json(&text).unwrap(), phi);
    }

    #[test]
    fn bare_identity_needs_a_space() {
        assert!(matches!(functional_from_json(r#"{"op":"identity"}"#), Err(Error::Document(_))));
        let typed = r#"{"space":{"category":"pinj","src":2,"dst":2},"functional":{"op":"identity"}}"#;
        assert!(functional_from_json(typed).unwrap().is_endo());
    }

    #[test]
    fn unknown_ops_and_fields_rejected() {
        assert!(functional_from_json(r#"{"op":"frobnicate"}"#).is_err());
        let extra = r#"{"op":"dagger","bogus":1,"inner":{"op":"const","m":{"type":"rel","src":1,"dst":1,"pairs":[]}}}"#;
        assert!(functional_from_json(extra).is_err());
    }

    #[test]
    fn param_document_round_trips() {
        let text = r#"{"x_space":{"category":"rel","src":3,"dst":3},"p_space":{"category":"rel","src":3,"dst":3},
            "body":{"op":"join","left":{"op":"argp"},"right":{"op":"compose",
            "after":{"op":"const","m":{"type":"rel","src":3,"dst":3,"pairs":[[1,2]]}},"before":{"op":"argx"}}}}"#;
        let psi = param_functional_from_json(text).unwrap();
        let again = param_functional_from_json(&param_functional_to_json(&psi).unwrap()).unwrap();
        assert_eq!(again, psi);
    }
}
