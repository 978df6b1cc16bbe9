use std::fmt;

use super::expr::{expect_space, Functional};
use crate::dagcat::{Category, HomSpace, Morphism};
use crate::error::{Error, Result};

/// The body of a two-argument functional ψ(x, p).
#[derive(Debug, Clone, PartialEq)]
pub enum ParamExpr {
    /// The recursion argument x.
    ArgX,
    /// The parameter p.
    ArgP,
    Const(Morphism),
    /// A one-argument functional applied to a sub-expression.
    Map(Functional, Box<ParamExpr>),
    /// Pointwise join (Rel, PInj).
    Join(Box<ParamExpr>, Box<ParamExpr>),
    /// Pointwise partial sum (DStoch).
    Sum(Box<ParamExpr>, Box<ParamExpr>),
    /// Pointwise composition `after ∘ before`.
    Compose(Box<ParamExpr>, Box<ParamExpr>),
}

impl ParamExpr {
    pub fn map(f: Functional, arg: ParamExpr) -> ParamExpr {
        ParamExpr::Map(f, Box::new(arg))
    }

    pub fn join(a: ParamExpr, b: ParamExpr) -> ParamExpr {
        ParamExpr::Join(Box::new(a), Box::new(b))
    }

    pub fn sum(a: ParamExpr, b: ParamExpr) -> ParamExpr {
        ParamExpr::Sum(Box::new(a), Box::new(b))
    }

    pub fn compose(after: ParamExpr, before: ParamExpr) -> ParamExpr {
        ParamExpr::Compose(Box::new(after), Box::new(before))
    }

    /// The hom-set the expression denotes into, given the argument spaces.
    pub fn type_of(&self, x_space: &HomSpace, p_space: &HomSpace) -> Result<HomSpace> {
        let cat = x_space.category();
        match self {
            ParamExpr::ArgX => Ok(x_space.clone()),
            ParamExpr::ArgP => Ok(p_space.clone()),
            ParamExpr::Const(m) => {
                if m.category() != cat {
                    return Err(Error::CategoryMismatch {
                        expected: cat,
                        found: m.category(),
                    });
                }
                Ok(m.hom_space())
            }
            ParamExpr::Map(f, arg) => f.codomain(&arg.type_of(x_space, p_space)?),
            ParamExpr::Join(a, b) | ParamExpr::Sum(a, b) => {
                let wants_sum = matches!(self, ParamExpr::Sum(..));
                if wants_sum != (cat == Category::DStoch) {
                    let what = if wants_sum { "partial sums" } else { "binary joins" };
                    return Err(Error::unsupported(cat, what));
                }
                let (ta, tb) = (a.type_of(x_space, p_space)?, b.type_of(x_space, p_space)?);
                if ta != tb {
                    return Err(Error::dims(format!("combined branches land in {ta} and {tb}")));
                }
                Ok(ta)
            }
            ParamExpr::Compose(after, before) => {
                let (ta, tb) = (after.type_of(x_space, p_space)?, before.type_of(x_space, p_space)?);
                if tb.dst() != ta.src() {
                    return Err(Error::dims(format!("cannot compose {ta} after {tb}")));
                }
                HomSpace::new(cat, tb.src().clone(), ta.dst().clone())
            }
        }
    }

    pub fn eval(&self, x: &Morphism, p: &Morphism) -> Result<Morphism> {
        match self {
            ParamExpr::ArgX => Ok(x.clone()),
            ParamExpr::ArgP => Ok(p.clone()),
            ParamExpr::Const(m) => Ok(m.clone()),
            ParamExpr::Map(f, arg) => f.eval(&arg.eval(x, p)?),
            ParamExpr::Join(a, b) => a.eval(x, p)?.join(&b.eval(x, p)?),
            ParamExpr::Sum(a, b) => a.eval(x, p)?.partial_sum(&b.eval(x, p)?),
            ParamExpr::Compose(after, before) => after.eval(x, p)?.after(&before.eval(x, p)?),
        }
    }

    /// (x, p) ↦ ψ(x†, p†)†.
    pub fn conj(&self) -> ParamExpr {
        match self {
            ParamExpr::ArgX => ParamExpr::ArgX,
            ParamExpr::ArgP => ParamExpr::ArgP,
            ParamExpr::Const(m) => ParamExpr::Const(m.dagger()),
            ParamExpr::Map(f, arg) => ParamExpr::map(f.conj(), arg.conj()),
            ParamExpr::Join(a, b) => ParamExpr::join(a.conj(), b.conj()),
            ParamExpr::Sum(a, b) => ParamExpr::sum(a.conj(), b.conj()),
            // (a ∘ b)† = b† ∘ a†
            ParamExpr::Compose(after, before) => ParamExpr::compose(before.conj(), after.conj()),
        }
    }

    pub fn mentions_p(&self) -> bool {
        match self {
            ParamExpr::ArgP => true,
            ParamExpr::ArgX | ParamExpr::Const(_) => false,
            ParamExpr::Map(_, arg) => arg.mentions_p(),
            ParamExpr::Join(a, b) | ParamExpr::Sum(a, b) | ParamExpr::Compose(a, b) => {
                a.mentions_p() || b.mentions_p()
            }
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            ParamExpr::ArgX | ParamExpr::ArgP | ParamExpr::Const(_) => 0,
            ParamExpr::Map(f, arg) => 1 + f.depth().max(arg.depth()),
            ParamExpr::Join(a, b) | ParamExpr::Sum(a, b) | ParamExpr::Compose(a, b) => {
                1 + a.depth().max(b.depth())
            }
        }
    }
}

impl fmt::Display for ParamExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamExpr::ArgX => f.write_str("x"),
            ParamExpr::ArgP => f.write_str("p"),
            ParamExpr::Const(m) => write!(f, "{m}"),
            ParamExpr::Map(func, arg) => write!(f, "{func}({arg})"),
            ParamExpr::Join(a, b) => write!(f, "({a} ∨ {b})"),
            ParamExpr::Sum(a, b) => write!(f, "({a} + {b})"),
            ParamExpr::Compose(a, b) => write!(f, "({a} ∘ {b})"),
        }
    }
}

/// ψ : C(X, Y) × C(P, Q) -> C(X, Y).
#[derive(Debug, Clone, PartialEq)]
pub struct ParamFunctionalExpr {
    x_space: HomSpace,
    p_space: HomSpace,
    body: ParamExpr,
}

impl ParamFunctionalExpr {
    pub fn new(x_space: HomSpace, p_space: HomSpace, body: ParamExpr) -> Result<Self> {
        if x_space.category() != p_space.category() {
            return Err(Error::CategoryMismatch {
                expected: x_space.category(),
                found: p_space.category(),
            });
        }
        let ty = body.type_of(&x_space, &p_space)?;
        if ty != x_space {
            return Err(Error::dims(format!(
                "parametrized functional lands in {ty}, expected the recursion space {x_space}"
            )));
        }
        Ok(ParamFunctionalExpr {
            x_space,
            p_space,
            body,
        })
    }

    pub fn x_space(&self) -> &HomSpace {
        &self.x_space
    }

    pub fn p_space(&self) -> &HomSpace {
        &self.p_space
    }

    pub fn body(&self) -> &ParamExpr {
        &self.body
    }

    pub fn apply(&self, x: &Morphism, p: &Morphism) -> Result<Morphism> {
        expect_space(x, &self.x_space)?;
        expect_space(p, &self.p_space)?;
        self.body.eval(x, p)
    }

    pub fn conj(&self) -> ParamFunctionalExpr {
        ParamFunctionalExpr {
            x_space: self.x_space.flipped(),
            p_space: self.p_space.flipped(),
            body: self.body.conj(),
        }
    }
}

impl fmt::Display for ParamFunctionalExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} : {} × {} -> {}", self.body, self.x_space, self.p_space, self.x_space)
    }
}
