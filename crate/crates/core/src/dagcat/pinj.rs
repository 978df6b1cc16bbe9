use std::fmt;

use super::object::FinObject;
use super::rel::RelMorphism;
use crate::error::{Error, Result};

/// A partial injection `src ⇀ dst`: `map[x] = Some(y)` when defined at `x`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PInjMorphism {
    src: FinObject,
    dst: FinObject,
    map: Vec<Option<usize>>,
}

impl PInjMorphism {
    pub fn new(src: FinObject, dst: FinObject, map: Vec<Option<usize>>) -> Result<Self> {
        if map.len() != src.size {
            return Err(Error::InvalidMorphism(format!(
                "assignment table has {} entries for a source of size {}",
                map.len(),
                src.size
            )));
        }
        let mut hit = vec![false; dst.size];
        for (x, y) in map.iter().enumerate() {
            if let Some(y) = *y {
                if y >= dst.size {
                    return Err(Error::InvalidMorphism(format!(
                        "{x}↦{y} out of range for target {dst}"
                    )));
                }
                if std::mem::replace(&mut hit[y], true) {
                    return Err(Error::InvalidMorphism(format!(
                        "not injective: two sources map to {y}"
                    )));
                }
            }
        }
        Ok(PInjMorphism { src, dst, map })
    }

    pub fn from_pairs(
        src: FinObject,
        dst: FinObject,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let mut map = vec![None; src.size];
        for (x, y) in pairs {
            if x >= src.size {
                return Err(Error::InvalidMorphism(format!("source {x} out of range for {src}")));
            }
            if map[x].is_some_and(|old| old != y) {
                return Err(Error::InvalidMorphism(format!("{x} assigned twice")));
            }
            map[x] = Some(y);
        }
        PInjMorphism::new(src, dst, map)
    }

    /// The nowhere-defined map, ⊥ of its hom-set.
    pub fn nowhere(src: FinObject, dst: FinObject) -> Self {
        let map = vec![None; src.size];
        PInjMorphism { src, dst, map }
    }

    pub fn identity(obj: FinObject) -> Self {
        let map = (0..obj.size).map(Some).collect();
        PInjMorphism {
            src: obj.clone(),
            dst: obj,
            map,
        }
    }

    pub fn src(&self) -> &FinObject {
        &self.src
    }

    pub fn dst(&self) -> &FinObject {
        &self.dst
    }

    pub fn get(&self, x: usize) -> Option<usize> {
        self.map.get(x).copied().flatten()
    }

    pub fn table(&self) -> &[Option<usize>] {
        &self.map
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.map.iter().enumerate().filter_map(|(x, y)| y.map(|y| (x, y)))
    }

    pub fn defined_count(&self) -> usize {
        self.map.iter().flatten().count()
    }

    fn check_same_hom(&self, other: &PInjMorphism) -> Result<()> {
        if self.src != other.src || self.dst != other.dst {
            return Err(Error::dims(format!(
                "partial injections live in different hom-sets: {} -> {} vs {} -> {}",
                self.src, self.dst, other.src, other.dst
            )));
        }
        Ok(())
    }

    /// `self ∘ f`.
    pub fn after(&self, f: &PInjMorphism) -> Result<PInjMorphism> {
        if f.dst != self.src {
            return Err(Error::dims(format!(
                "cannot compose {} -> {} after {} -> {}",
                self.src, self.dst, f.src, f.dst
            )));
        }
        let map = f.map.iter().map(|y| y.and_then(|y| self.map[y])).collect();
        Ok(PInjMorphism {
            src: f.src.clone(),
            dst: self.dst.clone(),
            map,
        })
    }

    /// The partial inverse.
    pub fn inverse(&self) -> PInjMorphism {
        let mut map = vec![None; self.dst.size];
        for (x, y) in self.pairs() {
            map[y] = Some(x);
        }
        PInjMorphism {
            src: self.dst.clone(),
            dst: self.src.clone(),
            map,
        }
    }

    /// Graph inclusion: wherever `self` is defined, `other` agrees.
    pub fn is_restriction_of(&self, other: &PInjMorphism) -> Result<bool> {
        self.check_same_hom(other)?;
        Ok(self
            .map
            .iter()
            .zip(&other.map)
            .all(|(a, b)| a.is_none() || a == b))
    }

    /// Union of graphs, defined only for compatible maps.
    pub fn join(&self, other: &PInjMorphism) -> Result<PInjMorphism> {
        self.check_same_hom(other)?;
        let mut map = self.map.clone();
        for (x, y) in other.pairs() {
            match map[x] {
                Some(existing) if existing != y => {
                    return Err(Error::IncompatibleJoin(format!(
                        "{self} ∨ {other}: {x} has two images"
                    )));
                }
                _ => map[x] = Some(y),
            }
        }
        PInjMorphism::new(self.src.clone(), self.dst.clone(), map)
            .map_err(|_| Error::IncompatibleJoin(format!("{self} ∨ {other} is not injective")))
    }

    /// The graph as a relation; the embedding PInj → Rel.
    pub fn to_rel(&self) -> RelMorphism {
        RelMorphism::from_pairs(self.src.clone(), self.dst.clone(), self.pairs())
            .expect("pairs of a valid partial injection are in range")
    }

    /// The relation viewed as a partial injection, if it is one.
    pub fn from_rel(r: &RelMorphism) -> Result<PInjMorphism> {
        PInjMorphism::from_pairs(r.src().clone(), r.dst().clone(), r.pairs())
    }
}

impl fmt::Display for PInjMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (x, y)) in self.pairs().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x}↦{y}")?;
        }
        f.write_str("}")
    }
}
