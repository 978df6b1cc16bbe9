use std::fmt;

use super::object::FinObject;
use crate::error::{Error, Result};

/// A relation `src -> dst` stored as a row-major bit-matrix: bit `(x, y)` is
/// set iff `x` is related to `y`. Composition is boolean matrix product and
/// the order is bitwise implication.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RelMorphism {
    src: FinObject,
    dst: FinObject,
    words: usize,
    bits: Vec<u64>,
}

fn words_for(cols: usize) -> usize {
    cols.div_ceil(64)
}

impl RelMorphism {
    /// The empty relation, ⊥ of its hom-set.
    pub fn empty(src: FinObject, dst: FinObject) -> Self {
        let words = words_for(dst.size);
        let bits = vec![0; words * src.size];
        RelMorphism { src, dst, words, bits }
    }

    pub fn identity(obj: FinObject) -> Self {
        let mut r = RelMorphism::empty(obj.clone(), obj);
        for x in 0..r.src.size {
            r.set(x, x);
        }
        r
    }

    pub fn from_pairs(
        src: FinObject,
        dst: FinObject,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let mut r = RelMorphism::empty(src, dst);
        for (x, y) in pairs {
            if x >= r.src.size || y >= r.dst.size {
                return Err(Error::InvalidMorphism(format!(
                    "pair ({x},{y}) out of range for {} -> {}",
                    r.src, r.dst
                )));
            }
            r.set(x, y);
        }
        Ok(r)
    }

    /// The relation whose bit `x * dst.size + y` is bit `i` of `code`.
    /// Codes `0 .. 2^(src*dst)` enumerate the hom-set.
    pub(crate) fn from_code(src: FinObject, dst: FinObject, code: u64) -> Self {
        let mut r = RelMorphism::empty(src, dst);
        let cols = r.dst.size;
        for x in 0..r.src.size {
            for y in 0..cols {
                if code >> (x * cols + y) & 1 == 1 {
                    r.set(x, y);
                }
            }
        }
        r
    }

    pub fn src(&self) -> &FinObject {
        &self.src
    }

    pub fn dst(&self) -> &FinObject {
        &self.dst
    }

    fn row(&self, x: usize) -> &[u64] {
        &self.bits[x * self.words..(x + 1) * self.words]
    }

    fn row_mut(&mut self, x: usize) -> &mut [u64] {
        &mut self.bits[x * self.words..(x + 1) * self.words]
    }

    pub fn contains(&self, x: usize, y: usize) -> bool {
        x < self.src.size && y < self.dst.size && self.row(x)[y / 64] >> (y % 64) & 1 == 1
    }

    pub fn set(&mut self, x: usize, y: usize) {
        let w = y / 64;
        self.row_mut(x)[w] |= 1 << (y % 64);
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.src.size).flat_map(move |x| {
            (0..self.dst.size)
                .filter(move |&y| self.contains(x, y))
                .map(move |y| (x, y))
        })
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    fn check_same_hom(&self, other: &RelMorphism) -> Result<()> {
        if self.src != other.src || self.dst != other.dst {
            return Err(Error::dims(format!(
                "relations live in different hom-sets: {} -> {} vs {} -> {}",
                self.src, self.dst, other.src, other.dst
            )));
        }
        Ok(())
    }

    /// `self ∘ f`: first `f`, then `self`.
    pub fn after(&self, f: &RelMorphism) -> Result<RelMorphism> {
        if f.dst != self.src {
            return Err(Error::dims(format!(
                "cannot compose {} -> {} after {} -> {}",
                self.src, self.dst, f.src, f.dst
            )));
        }
        let mut out = RelMorphism::empty(f.src.clone(), self.dst.clone());
        for x in 0..f.src.size {
            for y in 0..f.dst.size {
                if f.contains(x, y) {
                    let words = self.words;
                    let (src_row, dst_row) = (y * words, x * words);
                    for w in 0..words {
                        out.bits[dst_row + w] |= self.bits[src_row + w];
                    }
                }
            }
        }
        Ok(out)
    }

    /// The relational converse.
    pub fn converse(&self) -> RelMorphism {
        let mut out = RelMorphism::empty(self.dst.clone(), self.src.clone());
        for (x, y) in self.pairs() {
            out.set(y, x);
        }
        out
    }

    pub fn is_subset(&self, other: &RelMorphism) -> Result<bool> {
        self.check_same_hom(other)?;
        Ok(self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0))
    }

    pub fn union(&self, other: &RelMorphism) -> Result<RelMorphism> {
        self.check_same_hom(other)?;
        let mut out = self.clone();
        for (a, b) in out.bits.iter_mut().zip(&other.bits) {
            *a |= b;
        }
        Ok(out)
    }

    pub fn complement(&self) -> RelMorphism {
        let mut out = RelMorphism::empty(self.src.clone(), self.dst.clone());
        for x in 0..self.src.size {
            for y in 0..self.dst.size {
                if !self.contains(x, y) {
                    out.set(x, y);
                }
            }
        }
        out
    }

    /// The sub-relation on the block `rows × cols`, reindexed from zero.
    pub fn block(
        &self,
        rows: std::ops::Range<usize>,
        cols: std::ops::Range<usize>,
        src: FinObject,
        dst: FinObject,
    ) -> RelMorphism {
        let mut out = RelMorphism::empty(src, dst);
        for x in rows.clone() {
            for y in cols.clone() {
                if self.contains(x, y) {
                    out.set(x - rows.start, y - cols.start);
                }
            }
        }
        out
    }
}

impl fmt::Display for RelMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (x, y)) in self.pairs().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "({x},{y})")?;
        }
        f.write_str("}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(n: usize, m: usize, pairs: &[(usize, usize)]) -> RelMorphism {
        RelMorphism::from_pairs(n.into(), m.into(), pairs.iter().copied()).unwrap()
    }

    #[test]
    fn compose_matches_existential_definition() {
        let g = rel(2, 2, &[(1, 0)]);
        let f = rel(2, 2, &[(0, 1)]);
        assert_eq!(g.after(&f).unwrap(), rel(2, 2, &[(0, 0)]));
    }

    #[test]
    fn wide_relations_use_several_words() {
        let r = rel(2, 130, &[(0, 129), (1, 64)]);
        let s = rel(130, 1, &[(129, 0)]);
        assert_eq!(s.after(&r).unwrap(), rel(2, 1, &[(0, 0)]));
        assert_eq!(r.converse().converse(), r);
        assert_eq!(r.len(), 2);
    }

    #[test]
    fn out_of_range_pairs_rejected() {
        assert!(RelMorphism::from_pairs(2.into(), 2.into(), [(2, 0)]).is_err());
    }

    #[test]
    fn codes_cover_the_hom_set() {
        let all: std::collections::HashSet<_> =
            (0..16).map(|c| RelMorphism::from_code(2.into(), 2.into(), c)).collect();
        assert_eq!(all.len(), 16);
    }

    #[test]
    fn display_lists_pairs() {
        assert_eq!(rel(3, 3, &[(1, 2), (0, 1)]).to_string(), "{(0,1),(1,2)}");
    }
}
