use std::fmt;

use super::object::{Category, FinObject, HomSpace};
use super::pinj::PInjMorphism;
use super::rel::RelMorphism;
use super::stoch::{StochMorphism, DEFAULT_TOLERANCE};
use crate::error::{Error, Result};
use crate::order::HomDomain;

/// Largest `|X|·|Y|` for which a hom-set is enumerated by default.
pub const DEFAULT_ENUM_CAP: usize = 9;

/// An arrow of one of the three concrete categories.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Morphism {
    Rel(RelMorphism),
    PInj(PInjMorphism),
    Stoch(StochMorphism),
}

impl From<RelMorphism> for Morphism {
    fn from(r: RelMorphism) -> Self {
        Morphism::Rel(r)
    }
}

impl From<PInjMorphism> for Morphism {
    fn from(p: PInjMorphism) -> Self {
        Morphism::PInj(p)
    }
}

impl From<StochMorphism> for Morphism {
    fn from(s: StochMorphism) -> Self {
        Morphism::Stoch(s)
    }
}

fn mismatch(a: &Morphism, b: &Morphism) -> Error {
    Error::CategoryMismatch {
        expected: a.category(),
        found: b.category(),
    }
}

impl Morphism {
    pub fn category(&self) -> Category {
        match self {
            Morphism::Rel(_) => Category::Rel,
            Morphism::PInj(_) => Category::PInj,
            Morphism::Stoch(_) => Category::DStoch,
        }
    }

    pub fn src(&self) -> &FinObject {
        match self {
            Morphism::Rel(r) => r.src(),
            Morphism::PInj(p) => p.src(),
            Morphism::Stoch(s) => s.src(),
        }
    }

    pub fn dst(&self) -> &FinObject {
        match self {
            Morphism::Rel(r) => r.dst(),
            Morphism::PInj(p) => p.dst(),
            Morphism::Stoch(s) => s.dst(),
        }
    }

    pub fn hom_space(&self) -> HomSpace {
        HomSpace::new(self.category(), self.src().clone(), self.dst().clone())
            .expect("a constructed morphism has a well-formed hom-set")
    }

    /// ⊥ of C(src, dst).
    pub fn bottom(category: Category, src: FinObject, dst: FinObject) -> Result<Morphism> {
        Ok(match category {
            Category::Rel => RelMorphism::empty(src, dst).into(),
            Category::PInj => PInjMorphism::nowhere(src, dst).into(),
            Category::DStoch => {
                if src.size != dst.size {
                    return Err(Error::dims(format!("dstoch hom-sets must be square: {src} -> {dst}")));
                }
                StochMorphism::zero(src, dst).into()
            }
        })
    }

    pub fn identity(category: Category, obj: FinObject) -> Morphism {
        match category {
            Category::Rel => RelMorphism::identity(obj).into(),
            Category::PInj => PInjMorphism::identity(obj).into(),
            Category::DStoch => StochMorphism::identity(obj).into(),
        }
    }

    /// `self ∘ f`.
    pub fn after(&self, f: &Morphism) -> Result<Morphism> {
        match (self, f) {
            (Morphism::Rel(g), Morphism::Rel(f)) => g.after(f).map(Into::into),
            (Morphism::PInj(g), Morphism::PInj(f)) => g.after(f).map(Into::into),
            (Morphism::Stoch(g), Morphism::Stoch(f)) => g.after(f).map(Into::into),
            _ => Err(mismatch(self, f)),
        }
    }

    /// Relational converse, partial inverse, or transpose.
    pub fn dagger(&self) -> Morphism {
        match self {
            Morphism::Rel(r) => r.converse().into(),
            Morphism::PInj(p) => p.inverse().into(),
            Morphism::Stoch(s) => s.transpose().into(),
        }
    }

    /// The hom-set order, with the default tolerance for real entries.
    pub fn leq(&self, other: &Morphism) -> Result<bool> {
        self.leq_within(other, DEFAULT_TOLERANCE)
    }

    pub fn leq_within(&self, other: &Morphism, tolerance: f64) -> Result<bool> {
        match (self, other) {
            (Morphism::Rel(a), Morphism::Rel(b)) => a.is_subset(b),
            (Morphism::PInj(a), Morphism::PInj(b)) => a.is_restriction_of(b),
            (Morphism::Stoch(a), Morphism::Stoch(b)) => a.leq_within(b, tolerance),
            _ => Err(mismatch(self, other)),
        }
    }

    /// Binary join: union in Rel, compatible union in PInj.
    pub fn join(&self, other: &Morphism) -> Result<Morphism> {
        match (self, other) {
            (Morphism::Rel(a), Morphism::Rel(b)) => a.union(b).map(Into::into),
            (Morphism::PInj(a), Morphism::PInj(b)) => a.join(b).map(Into::into),
            (Morphism::Stoch(_), Morphism::Stoch(_)) => {
                Err(Error::unsupported(Category::DStoch, "binary joins"))
            }
            _ => Err(mismatch(self, other)),
        }
    }

    /// Entrywise sum in DStoch, defined when it stays subnormalized.
    pub fn partial_sum(&self, other: &Morphism) -> Result<Morphism> {
        match (self, other) {
            (Morphism::Stoch(a), Morphism::Stoch(b)) => {
                a.partial_sum(b, DEFAULT_TOLERANCE).map(Into::into)
            }
            (a, b) if a.category() == b.category() => Err(Error::unsupported(
                a.category(),
                "partial sums (use a join instead)",
            )),
            _ => Err(mismatch(self, other)),
        }
    }

    /// Equality, up to `tolerance` for real entries.
    pub fn approx_eq(&self, other: &Morphism, tolerance: f64) -> bool {
        match (self, other) {
            (Morphism::Stoch(a), Morphism::Stoch(b)) => a.approx_eq(b, tolerance),
            _ => self == other,
        }
    }

    pub fn is_hermitian(&self) -> Result<bool> {
        if self.src() != self.dst() {
            return Err(Error::dims(format!(
                "hermitian needs an endomorphism, got {} -> {}",
                self.src(),
                self.dst()
            )));
        }
        Ok(self.approx_eq(&self.dagger(), DEFAULT_TOLERANCE))
    }

    /// An isomorphism whose inverse is its dagger.
    pub fn is_unitary(&self) -> bool {
        let d = self.dagger();
        let cat = self.category();
        let left = d.after(self).expect("f† ∘ f is composable");
        let right = self.after(&d).expect("f ∘ f† is composable");
        left.approx_eq(&Morphism::identity(cat, self.src().clone()), DEFAULT_TOLERANCE)
            && right.approx_eq(&Morphism::identity(cat, self.dst().clone()), DEFAULT_TOLERANCE)
    }

    /// `self ⊎ other : X ⊎ X' -> Y ⊎ Y'`, block-diagonal.
    pub fn direct_sum(&self, other: &Morphism) -> Result<Morphism> {
        let src = self.src().disjoint_union(other.src());
        let dst = self.dst().disjoint_union(other.dst());
        let (dx, dy) = (self.src().size, self.dst().size);
        match (self, other) {
            (Morphism::Rel(a), Morphism::Rel(b)) => {
                let shifted = b.pairs().map(|(x, y)| (x + dx, y + dy));
                RelMorphism::from_pairs(src, dst, a.pairs().chain(shifted)).map(Into::into)
            }
            (Morphism::PInj(a), Morphism::PInj(b)) => {
                let shifted = b.pairs().map(|(x, y)| (x + dx, y + dy));
                PInjMorphism::from_pairs(src, dst, a.pairs().chain(shifted)).map(Into::into)
            }
            (Morphism::Stoch(a), Morphism::Stoch(b)) => Ok(a.direct_sum(b).into()),
            _ => Err(mismatch(self, other)),
        }
    }

    pub fn as_rel(&self) -> Option<&RelMorphism> {
        match self {
            Morphism::Rel(r) => Some(r),
            _ => None,
        }
    }

    pub fn as_pinj(&self) -> Option<&PInjMorphism> {
        match self {
            Morphism::PInj(p) => Some(p),
            _ => None,
        }
    }

    pub fn as_stoch(&self) -> Option<&StochMorphism> {
        match self {
            Morphism::Stoch(s) => Some(s),
            _ => None,
        }
    }
}

impl fmt::Display for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Morphism::Rel(r) => r.fmt(f),
            Morphism::PInj(p) => p.fmt(f),
            Morphism::Stoch(s) => s.fmt(f),
        }
    }
}

/// `g ∘ f`.
pub fn compose(g: &Morphism, f: &Morphism) -> Result<Morphism> {
    g.after(f)
}

pub fn dagger(f: &Morphism) -> Morphism {
    f.dagger()
}

pub fn leq(f: &Morphism, g: &Morphism) -> Result<bool> {
    f.leq(g)
}

pub fn join(f: &Morphism, g: &Morphism) -> Result<Morphism> {
    f.join(g)
}

/// Every morphism `X -> Y`, each exactly once, in a fixed order.
pub fn enumerate_homs(category: Category, x: &FinObject, y: &FinObject, cap: usize) -> Result<Vec<Morphism>> {
    let cells = x.size * y.size;
    if !category.is_enumerable() {
        return Err(Error::unsupported(category, "hom-set enumeration"));
    }
    if cells > cap || cells >= 63 {
        return Err(Error::TooLarge {
            src: x.clone(),
            dst: y.clone(),
            cells,
            cap,
        });
    }
    Ok(match category {
        Category::Rel => (0..1u64 << cells)
            .map(|code| RelMorphism::from_code(x.clone(), y.clone(), code).into())
            .collect(),
        Category::PInj => {
            let mut out = Vec::new();
            let mut table = vec![None; x.size];
            let mut used = vec![false; y.size];
            partial_injections(0, &mut table, &mut used, &mut |t| {
                out.push(
                    PInjMorphism::new(x.clone(), y.clone(), t.to_vec())
                        .expect("enumerated tables are injective")
                        .into(),
                )
            });
            out
        }
        Category::DStoch => unreachable!("checked above"),
    })
}

fn partial_injections(
    at: usize,
    table: &mut [Option<usize>],
    used: &mut [bool],
    emit: &mut dyn FnMut(&[Option<usize>]),
) {
    if at == table.len() {
        emit(table);
        return;
    }
    table[at] = None;
    partial_injections(at + 1, table, used, emit);
    for y in 0..used.len() {
        if !used[y] {
            used[y] = true;
            table[at] = Some(y);
            partial_injections(at + 1, table, used, emit);
            used[y] = false;
        }
    }
    table[at] = None;
}

impl HomDomain for HomSpace {
    type Elem = Morphism;

    fn bottom(&self) -> Morphism {
        Morphism::bottom(self.category(), self.src().clone(), self.dst().clone())
            .expect("hom-space shape validated at construction")
    }

    fn leq(&self, a: &Morphism, b: &Morphism) -> bool {
        a.leq(b).unwrap_or(false)
    }

    fn sup_of_chain(&self, chain: &[Morphism]) -> Morphism {
        chain.iter().fold(self.bottom(), |acc, m| match (&acc, m) {
            (Morphism::Stoch(a), Morphism::Stoch(b)) => a.entrywise_max(b).map(Into::into).unwrap_or(acc),
            _ => acc.join(m).unwrap_or(acc),
        })
    }

    fn contains(&self, a: &Morphism) -> bool {
        a.category() == self.category() && a.src() == self.src() && a.dst() == self.dst()
    }

    fn enumerate(&self) -> Option<Vec<Morphism>> {
        enumerate_homs(self.category(), self.src(), self.dst(), DEFAULT_ENUM_CAP).ok()
    }

    fn distance(&self, a: &Morphism, b: &Morphism) -> Option<f64> {
        match (a, b) {
            (Morphism::Stoch(a), Morphism::Stoch(b)) => a.max_abs_diff(b).ok(),
            _ => None,
        }
    }
}
