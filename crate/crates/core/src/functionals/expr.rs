use std::fmt;
use std::sync::Arc;

use crate::dagcat::{Category, HomSpace, Morphism};
use crate::error::{Error, Result};

type HostMap = dyn Fn(&Morphism) -> Result<Morphism> + Send + Sync;

/// An opaque functional supplied by the host program. It is evaluated as a
/// black box, conjugated by wrapping it in daggers, and never serialized.
#[derive(Clone)]
pub struct HostFn {
    name: Arc<str>,
    domain: HomSpace,
    codomain: HomSpace,
    map: Arc<HostMap>,
}

impl HostFn {
    pub fn new(
        name: &str,
        domain: HomSpace,
        codomain: HomSpace,
        map: impl Fn(&Morphism) -> Result<Morphism> + Send + Sync + 'static,
    ) -> Self {
        HostFn {
            name: Arc::from(name),
            domain,
            codomain,
            map: Arc::new(map),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn domain(&self) -> &HomSpace {
        &self.domain
    }

    pub fn codomain(&self) -> &HomSpace {
        &self.codomain
    }

    fn call(&self, h: &Morphism) -> Result<Morphism> {
        let out = (self.map)(h)?;
        if out.hom_space() != self.codomain {
            return Err(Error::Host {
                name: self.name.to_string(),
                message: format!("returned an element of {}, declared {}", out.hom_space(), self.codomain),
            });
        }
        Ok(out)
    }
}

impl fmt::Debug for HostFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HostFn({}: {} -> {})", self.name, self.domain, self.codomain)
    }
}

/// Host functionals compare by identity of the wrapped closure.
impl PartialEq for HostFn {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.map, &other.map) && self.domain == other.domain && self.codomain == other.codomain
    }
}

/// A continuous map between hom-sets, built from a closed set of constructors.
#[derive(Debug, Clone, PartialEq)]
pub enum Functional {
    /// h ↦ m.
    Const(Morphism),
    /// h ↦ h.
    Identity,
    /// h ↦ h ∘ m.
    PreCompose(Morphism),
    /// h ↦ m ∘ h.
    PostCompose(Morphism),
    /// h ↦ h†.
    Dagger,
    /// h ↦ h ∨ m (Rel, PInj).
    JoinWith(Morphism),
    /// h ↦ h + m, defined while the sum stays subnormalized (DStoch).
    AddWith(Morphism),
    /// h ↦ then(first(h)).
    Seq(Box<Functional>, Box<Functional>),
    /// h ↦ left(h) ∨ right(h).
    JoinOf(Box<Functional>, Box<Functional>),
    Host(HostFn),
}

impl Functional {
    pub fn seq(first: Functional, then: Functional) -> Functional {
        Functional::Seq(Box::new(first), Box::new(then))
    }

    pub fn join_of(left: Functional, right: Functional) -> Functional {
        Functional::JoinOf(Box::new(left), Box::new(right))
    }

    /// The hom-set this functional lands in when fed elements of `dom`.
    pub fn codomain(&self, dom: &HomSpace) -> Result<HomSpace> {
        let cat = dom.category();
        let same_cat = |m: &Morphism| -> Result<()> {
            if m.category() != cat {
                return Err(Error::CategoryMismatch {
                    expected: cat,
                    found: m.category(),
                });
            }
            Ok(())
        };
        match self {
            Functional::Const(m) => {
                same_cat(m)?;
                Ok(m.hom_space())
            }
            Functional::Identity => Ok(dom.clone()),
            Functional::PreCompose(m) => {
                same_cat(m)?;
                if m.dst() != dom.src() {
                    return Err(Error::dims(format!(
                        "precompose with {} -> {} on {dom}",
                        m.src(),
                        m.dst()
                    )));
                }
                HomSpace::new(cat, m.src().clone(), dom.dst().clone())
            }
            Functional::PostCompose(m) => {
                same_cat(m)?;
                if m.src() != dom.dst() {
                    return Err(Error::dims(format!(
                        "postcompose with {} -> {} on {dom}",
                        m.src(),
                        m.dst()
                    )));
                }
                HomSpace::new(cat, dom.src().clone(), m.dst().clone())
            }
            Functional::Dagger => Ok(dom.flipped()),
            Functional::JoinWith(m) => {
                same_cat(m)?;
                if cat == Category::DStoch {
                    return Err(Error::unsupported(cat, "binary joins (use addwith)"));
                }
                expect_space(m, dom)?;
                Ok(dom.clone())
            }
            Functional::AddWith(m) => {
                same_cat(m)?;
                if cat != Category::DStoch {
                    return Err(Error::unsupported(cat, "partial sums (use joinwith)"));
                }
                expect_space(m, dom)?;
                Ok(dom.clone())
            }
            Functional::Seq(first, then) => then.codomain(&first.codomain(dom)?),
            Functional::JoinOf(left, right) => {
                if cat == Category::DStoch {
                    return Err(Error::unsupported(cat, "binary joins"));
                }
                let (l, r) = (left.codomain(dom)?, right.codomain(dom)?);
                if l != r {
                    return Err(Error::dims(format!("joined branches land in {l} and {r}")));
                }
                Ok(l)
            }
            Functional::Host(host) => {
                if host.domain != *dom {
                    return Err(Error::dims(format!(
                        "host `{}` expects {}, got {dom}",
                        host.name, host.domain
                    )));
                }
                Ok(host.codomain.clone())
            }
        }
    }

    /// Structural evaluation. Inputs are not re-typed here; see
    /// [`FunctionalExpr::apply`] for the checked entry point.
    pub fn eval(&self, h: &Morphism) -> Result<Morphism> {
        match self {
            Functional::Const(m) => Ok(m.clone()),
            Functional::Identity => Ok(h.clone()),
            Functional::PreCompose(m) => h.after(m),
            Functional::PostCompose(m) => m.after(h),
            Functional::Dagger => Ok(h.dagger()),
            Functional::JoinWith(m) => h.join(m),
            Functional::AddWith(m) => h.partial_sum(m),
            Functional::Seq(first, then) => then.eval(&first.eval(h)?),
            Functional::JoinOf(left, right) => left.eval(h)?.join(&right.eval(h)?),
            Functional::Host(host) => host.call(h),
        }
    }

    /// The conjugate h ↦ φ(h†)†, by symbolic rewriting.
    pub fn conj(&self) -> Functional {
        match self {
            Functional::Const(m) => Functional::Const(m.dagger()),
            Functional::Identity => Functional::Identity,
            Functional::PreCompose(m) => Functional::PostCompose(m.dagger()),
            Functional::PostCompose(m) => Functional::PreCompose(m.dagger()),
            Functional::Dagger => Functional::Dagger,
            Functional::JoinWith(m) => Functional::JoinWith(m.dagger()),
            Functional::AddWith(m) => Functional::AddWith(m.dagger()),
            Functional::Seq(first, then) => Functional::seq(first.conj(), then.conj()),
            Functional::JoinOf(left, right) => Functional::join_of(left.conj(), right.conj()),
            Functional::Host(host) => Functional::seq(
                Functional::seq(Functional::Dagger, Functional::Host(host.clone())),
                Functional::Dagger,
            ),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Functional::Seq(a, b) | Functional::JoinOf(a, b) => 1 + a.depth().max(b.depth()),
            _ => 0,
        }
    }

    pub fn has_host(&self) -> bool {
        match self {
            Functional::Host(_) => true,
            Functional::Seq(a, b) | Functional::JoinOf(a, b) => a.has_host() || b.has_host(),
            _ => false,
        }
    }
}

impl fmt::Display for Functional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Functional::Const(m) => write!(f, "const {m}"),
            Functional::Identity => f.write_str("id"),
            Functional::PreCompose(m) => write!(f, "(- ∘ {m})"),
            Functional::PostCompose(m) => write!(f, "({m} ∘ -)"),
            Functional::Dagger => f.write_str("†"),
            Functional::JoinWith(m) => write!(f, "(- ∨ {m})"),
            Functional::AddWith(m) => write!(f, "(- + {m})"),
            Functional::Seq(a, b) => write!(f, "({a} ; {b})"),
            Functional::JoinOf(a, b) => write!(f, "({a} ∨ {b})"),
            Functional::Host(h) => write!(f, "host:{}", h.name),
        }
    }
}

pub(crate) fn expect_space(m: &Morphism, space: &HomSpace) -> Result<()> {
    if m.hom_space() != *space {
        return Err(Error::dims(format!("expected an element of {space}, got one of {}", m.hom_space())));
    }
    Ok(())
}

/// A functional together with its declared domain and codomain.
#[derive(Debug, Clone, PartialEq)]
pub struct FunctionalExpr {
    domain: HomSpace,
    codomain: HomSpace,
    body: Functional,
}

impl FunctionalExpr {
    /// Types `body` on `domain`, inferring the codomain.
    pub fn new(domain: HomSpace, body: Functional) -> Result<Self> {
        let codomain = body.codomain(&domain)?;
        Ok(FunctionalExpr {
            domain,
            codomain,
            body,
        })
    }

    /// A functional from `space` to itself.
    pub fn endo(space: HomSpace, body: Functional) -> Result<Self> {
        let expr = FunctionalExpr::new(space, body)?;
        if !expr.is_endo() {
            return Err(Error::dims(format!(
                "functional maps {} to {}, expected an endo-functional",
                expr.domain, expr.codomain
            )));
        }
        Ok(expr)
    }

    pub fn domain(&self) -> &HomSpace {
        &self.domain
    }

    pub fn codomain(&self) -> &HomSpace {
        &self.codomain
    }

    pub fn body(&self) -> &Functional {
        &self.body
    }

    pub fn is_endo(&self) -> bool {
        self.domain == self.codomain
    }

    pub fn apply(&self, h: &Morphism) -> Result<Morphism> {
        expect_space(h, &self.domain)?;
        self.body.eval(h)
    }

    /// The conjugate functional C(Y, X) -> C(W, Z) of φ : C(X, Y) -> C(Z, W).
    pub fn conj(&self) -> FunctionalExpr {
        FunctionalExpr {
            domain: self.domain.flipped(),
            codomain: self.codomain.flipped(),
            body: self.body.conj(),
        }
    }

    /// `then ∘ self`.
    pub fn then(&self, then: &FunctionalExpr) -> Result<FunctionalExpr> {
        if then.domain != self.codomain {
            return Err(Error::dims(format!(
                "cannot sequence {} -> {} with {} -> {}",
                self.domain, self.codomain, then.domain, then.codomain
            )));
        }
        Ok(FunctionalExpr {
            domain: self.domain.clone(),
            codomain: then.codomain.clone(),
            body: Functional::seq(self.body.clone(), then.body.clone()),
        })
    }
}

impl fmt::Display for FunctionalExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} : {} -> {}", self.body, self.domain, self.codomain)
    }
}

/// φ(h†)†, evaluated literally; the reference semantics for [`Functional::conj`].
pub fn conj_by_definition(phi: &FunctionalExpr, h: &Morphism) -> Result<Morphism> {
    Ok(phi.apply(&h.dagger())?.dagger())
}
