use std::fmt;
use std::hash::{Hash, Hasher};

use super::object::FinObject;
use crate::error::{Error, Result};

/// Comparison tolerance for real entries.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// A subnormalized doubly stochastic map: an `n × n` nonnegative matrix whose
/// rows and columns each sum to at most 1. Entry `(x, y)` is the weight from
/// source `x` to target `y`; composition `g ∘ f` is the product `F · G`.
#[derive(Debug, Clone, PartialEq)]
pub struct StochMorphism {
    src: FinObject,
    dst: FinObject,
    entries: Vec<f64>,
}

impl Eq for StochMorphism {}

impl Hash for StochMorphism {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.src.hash(state);
        self.dst.hash(state);
        for e in &self.entries {
            // +0.0 and -0.0 compare equal, so they must hash equal.
            let e = if *e == 0.0 { 0.0 } else { *e };
            e.to_bits().hash(state);
        }
    }
}

impl StochMorphism {
    pub fn new(src: FinObject, dst: FinObject, rows: Vec<Vec<f64>>) -> Result<Self> {
        Self::with_tolerance(src, dst, rows, DEFAULT_TOLERANCE)
    }

    pub fn with_tolerance(
        src: FinObject,
        dst: FinObject,
        rows: Vec<Vec<f64>>,
        tolerance: f64,
    ) -> Result<Self> {
        let n = src.size;
        if dst.size != n {
            return Err(Error::dims(format!("dstoch maps must be square, got {src} -> {dst}")));
        }
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidMorphism(format!("expected a {n}×{n} matrix")));
        }
        let entries: Vec<f64> = rows.into_iter().flatten().collect();
        let m = StochMorphism { src, dst, entries };
        m.check_subnormalized(tolerance)?;
        Ok(m)
    }

    pub fn square(n: usize, rows: Vec<Vec<f64>>) -> Result<Self> {
        Self::new(n.into(), n.into(), rows)
    }

    pub fn zero(src: FinObject, dst: FinObject) -> Self {
        let n = src.size;
        StochMorphism {
            src,
            dst,
            entries: vec![0.0; n * n],
        }
    }

    pub fn identity(obj: FinObject) -> Self {
        let n = obj.size;
        let mut m = StochMorphism::zero(obj.clone(), obj);
        for i in 0..n {
            m.entries[i * n + i] = 1.0;
        }
        m
    }

    pub(crate) fn from_entries_unchecked(src: FinObject, dst: FinObject, entries: Vec<f64>) -> Self {
        debug_assert_eq!(entries.len(), src.size * dst.size);
        StochMorphism { src, dst, entries }
    }

    fn check_subnormalized(&self, tolerance: f64) -> Result<()> {
        let n = self.n();
        for (i, e) in self.entries.iter().enumerate() {
            if !e.is_finite() || *e < -tolerance {
                return Err(Error::InvalidMorphism(format!(
                    "entry ({}, {}) = {e} is not a nonnegative real",
                    i / n.max(1),
                    i % n.max(1)
                )));
            }
        }
        for i in 0..n {
            let row: f64 = (0..n).map(|j| self.get(i, j)).sum();
            let col: f64 = (0..n).map(|j| self.get(j, i)).sum();
            if row > 1.0 + tolerance {
                return Err(Error::InvalidMorphism(format!("row {i} sums to {row} > 1")));
            }
            if col > 1.0 + tolerance {
                return Err(Error::InvalidMorphism(format!("column {i} sums to {col} > 1")));
            }
        }
        Ok(())
    }

    pub fn is_subnormalized(&self, tolerance: f64) -> bool {
        self.check_subnormalized(tolerance).is_ok()
    }

    pub fn n(&self) -> usize {
        self.src.size
    }

    pub fn src(&self) -> &FinObject {
        &self.src
    }

    pub fn dst(&self) -> &FinObject {
        &self.dst
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.n() + j]
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        let n = self.n();
        (0..n).map(|i| self.entries[i * n..(i + 1) * n].to_vec()).collect()
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    fn check_same_hom(&self, other: &StochMorphism) -> Result<()> {
        if self.src != other.src || self.dst != other.dst {
            return Err(Error::dims(format!(
                "matrices live in different hom-sets: {} -> {} vs {} -> {}",
                self.src, self.dst, other.src, other.dst
            )));
        }
        Ok(())
    }

    /// `self ∘ f`, the matrix product `F · self`.
    pub fn after(&self, f: &StochMorphism) -> Result<StochMorphism> {
        if f.dst != self.src {
            return Err(Error::dims(format!(
                "cannot compose {} -> {} after {} -> {}",
                self.src, self.dst, f.src, f.dst
            )));
        }
        let n = self.n();
        let mut entries = vec![0.0; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = f.get(i, k);
                if a != 0.0 {
                    for j in 0..n {
                        entries[i * n + j] += a * self.get(k, j);
                    }
                }
            }
        }
        Ok(StochMorphism {
            src: f.src.clone(),
            dst: self.dst.clone(),
            entries,
        })
    }

    pub fn transpose(&self) -> StochMorphism {
        let n = self.n();
        let mut entries = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                entries[j * n + i] = self.get(i, j);
            }
        }
        StochMorphism {
            src: self.dst.clone(),
            dst: self.src.clone(),
            entries,
        }
    }

    pub fn leq_within(&self, other: &StochMorphism, tolerance: f64) -> Result<bool> {
        self.check_same_hom(other)?;
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .all(|(a, b)| *a <= b + tolerance))
    }

    pub fn max_abs_diff(&self, other: &StochMorphism) -> Result<f64> {
        self.check_same_hom(other)?;
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max))
    }

    pub fn approx_eq(&self, other: &StochMorphism, tolerance: f64) -> bool {
        self.max_abs_diff(other).is_ok_and(|d| d <= tolerance)
    }

    /// Entrywise maximum; the supremum of an ascending chain.
    pub fn entrywise_max(&self, other: &StochMorphism) -> Result<StochMorphism> {
        self.check_same_hom(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.max(*b))
            .collect();
        Ok(StochMorphism {
            src: self.src.clone(),
            dst: self.dst.clone(),
            entries,
        })
    }

    /// Entrywise sum, defined when it stays subnormalized.
    pub fn partial_sum(&self, other: &StochMorphism, tolerance: f64) -> Result<StochMorphism> {
        self.check_same_hom(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        let sum = StochMorphism {
            src: self.src.clone(),
            dst: self.dst.clone(),
            entries,
        };
        sum.check_subnormalized(tolerance)
            .map_err(|e| Error::InvalidMorphism(format!("sum leaves DStoch≤1: {e}")))?;
        Ok(sum)
    }

    pub fn scaled(&self, factor: f64) -> StochMorphism {
        StochMorphism {
            src: self.src.clone(),
            dst: self.dst.clone(),
            entries: self.entries.iter().map(|e| e * factor).collect(),
        }
    }

    /// Block-diagonal sum `self ⊕ other`.
    pub fn direct_sum(&self, other: &StochMorphism) -> StochMorphism {
        let (n, m) = (self.n(), other.n());
        let size = n + m;
        let mut entries = vec![0.0; size * size];
        for i in 0..n {
            for j in 0..n {
                entries[i * size + j] = self.get(i, j);
            }
        }
        for i in 0..m {
            for j in 0..m {
                entries[(n + i) * size + n + j] = other.get(i, j);
            }
        }
        StochMorphism {
            src: self.src.disjoint_union(&other.src),
            dst: self.dst.disjoint_union(&other.dst),
            entries,
        }
    }
}

impl fmt::Display for StochMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, row) in self.rows().iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for (j, e) in row.iter().enumerate() {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{e}")?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}
