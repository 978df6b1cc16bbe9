//! Finite value universes and the denotation of a definition as a partial
//! injection on one.

use std::collections::HashMap;

use dualdag_core::dagcat::{FinObject, PInjMorphism};

use crate::ast::{Program, Value};
use crate::error::{Error, Result};
use crate::eval::{eval_ref, Bindings};
use crate::ast::FnRef;

/// Largest universe [`Universe::terms`] will build.
pub const DEFAULT_UNIVERSE_CAP: usize = 50_000;

/// An indexed finite set of values.
#[derive(Debug, Clone)]
pub struct Universe {
    values: Vec<Value>,
    index: HashMap<Value, usize>,
}

impl Universe {
    /// All terms of size at most `bound` over `Z`, `Nil`, the given atoms,
    /// `S`, `Cons` and pairs, ordered by size and then by construction.
    pub fn terms(bound: usize, atoms: &[String]) -> Result<Universe> {
        Self::terms_capped(bound, atoms, DEFAULT_UNIVERSE_CAP)
    }

    pub fn terms_capped(bound: usize, atoms: &[String], cap: usize) -> Result<Universe> {
        let count = Self::count(bound, atoms.len());
        if count > cap {
            return Err(Error::TooLarge { bound, count, cap });
        }
        // by_size[n] holds every term of size exactly n.
        let mut by_size: Vec<Vec<Value>> = vec![Vec::new(); bound + 1];
        for n in 1..=bound {
            let mut layer = Vec::new();
            if n == 1 {
                layer.push(Value::Z);
                layer.push(Value::Nil);
                layer.extend(atoms.iter().map(|a| Value::Atom(a.clone())));
            } else {
                layer.extend(by_size[n - 1].iter().map(|v| Value::succ(v.clone())));
                for (left, right) in (1..n - 1).map(|a| (a, n - 1 - a)) {
                    for a in &by_size[left] {
                        for b in &by_size[right] {
                            layer.push(Value::cons(a.clone(), b.clone()));
                        }
                    }
                }
                for (left, right) in (1..n - 1).map(|a| (a, n - 1 - a)) {
                    for a in &by_size[left] {
                        for b in &by_size[right] {
                            layer.push(Value::pair(a.clone(), b.clone()));
                        }
                    }
                }
            }
            by_size[n] = layer;
        }
        Ok(Self::from_values(by_size.into_iter().flatten().collect()))
    }

    /// Number of terms of size at most `bound` with `atoms` atom constants.
    pub fn count(bound: usize, atoms: usize) -> usize {
        let mut exact = vec![0usize; bound + 1];
        for n in 1..=bound {
            exact[n] = if n == 1 {
                2 + atoms
            } else {
                let binary: usize = (1..n - 1).map(|a| exact[a].saturating_mul(exact[n - 1 - a])).sum();
                exact[n - 1].saturating_add(binary.saturating_mul(2))
            };
        }
        exact.iter().fold(0usize, |a, b| a.saturating_add(*b))
    }

    /// A universe of explicitly listed values; duplicates are dropped.
    pub fn from_values(values: Vec<Value>) -> Universe {
        let mut index = HashMap::with_capacity(values.len());
        let mut kept = Vec::with_capacity(values.len());
        for v in values {
            if !index.contains_key(&v) {
                index.insert(v.clone(), kept.len());
                kept.push(v);
            }
        }
        Universe { values: kept, index }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[Value] {
        &self.values
    }

    pub fn index_of(&self, v: &Value) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn object(&self) -> FinObject {
        FinObject::labeled(self.len(), "values")
    }
}

/// The partial injection on `universe` sending `v` to the result of the
/// entry function when that is defined at `fuel` and lies in the universe.
pub fn denote_on(
    program: &Program,
    entry: &FnRef,
    bindings: &Bindings,
    universe: &Universe,
    fuel: u64,
) -> Result<PInjMorphism> {
    let mut table = vec![None; universe.len()];
    let mut hit: Vec<Option<usize>> = vec![None; universe.len()];
    for (i, v) in universe.values().iter().enumerate() {
        let Some(w) = eval_ref(program, entry, bindings, v, fuel)?.value().cloned() else { continue };
        let Some(j) = universe.index_of(&w) else { continue };
        if let Some(k) = hit[j] {
            return Err(Error::NotInjective(format!("{} and {} both map to {w}", universe.values()[k], v)));
        }
        hit[j] = Some(i);
        table[i] = Some(j);
    }
    Ok(PInjMorphism::new(universe.object(), universe.object(), table)?)
}

/// [`denote_on`] over all terms of size at most `bound`, using the program's
/// declared atoms.
pub fn denote(program: &Program, fname: &str, bindings: &Bindings, bound: usize, fuel: u64) -> Result<PInjMorphism> {
    let universe = Universe::terms(bound, &program.atoms)?;
    denote_on(program, &FnRef::new(fname), bindings, &universe, fuel)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_match_enumeration() {
        for bound in 0..=6 {
            for atoms in 0..=2 {
                let names: Vec<String> = (0..atoms).map(|i| format!("a{i}")).collect();
                let u = Universe::terms(bound, &names).unwrap();
                assert_eq!(u.len(), Universe::count(bound, atoms));
                assert!(u.values().iter().all(|v| v.size() <= bound));
            }
        }
        assert_eq!(Universe::count(6, 0), 556);
    }

    #[test]
    fn too_large_is_reported() {
        assert!(matches!(Universe::terms_capped(6, &[], 100), Err(Error::TooLarge { count: 556, .. })));
    }
}
