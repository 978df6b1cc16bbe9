use rand::Rng;

use super::morphism::Morphism;
use super::object::{Category, FinObject, HomSpace};
use super::pinj::PInjMorphism;
use super::rel::RelMorphism;
use super::stoch::StochMorphism;

/// A random subnormalized doubly stochastic `n × n` matrix. Roughly a third
/// of the entries are zero, and the largest row or column sum lands in
/// `[0.5, 1]`.
pub fn random_stoch<R: Rng + ?Sized>(n: usize, rng: &mut R) -> StochMorphism {
    let mut entries: Vec<f64> = (0..n * n)
        .map(|_| if rng.gen_bool(0.35) { 0.0 } else { rng.gen::<f64>() })
        .collect();
    let mut max_sum: f64 = 0.0;
    for i in 0..n {
        let row: f64 = (0..n).map(|j| entries[i * n + j]).sum();
        let col: f64 = (0..n).map(|j| entries[j * n + i]).sum();
        max_sum = max_sum.max(row).max(col);
    }
    if max_sum > 0.0 {
        let scale = rng.gen_range(0.5..=1.0) / max_sum;
        for e in &mut entries {
            *e *= scale;
        }
    }
    StochMorphism::from_entries_unchecked(n.into(), n.into(), entries)
}

/// A random matrix entrywise below `upper`; still subnormalized.
pub fn random_stoch_below<R: Rng + ?Sized>(upper: &StochMorphism, rng: &mut R) -> StochMorphism {
    let entries = upper
        .entries()
        .iter()
        .map(|e| {
            if rng.gen_bool(0.2) {
                *e
            } else {
                e * rng.gen::<f64>()
            }
        })
        .collect();
    StochMorphism::from_entries_unchecked(upper.src().clone(), upper.dst().clone(), entries)
}

/// A uniformly random element of a Rel or PInj hom-set, or a random DStoch map.
pub fn random_morphism<R: Rng + ?Sized>(space: &HomSpace, rng: &mut R) -> Morphism {
    let (src, dst) = (space.src().clone(), space.dst().clone());
    match space.category() {
        Category::Rel => {
            let mut r = RelMorphism::empty(src, dst);
            for x in 0..space.src().size {
                for y in 0..space.dst().size {
                    if rng.gen_bool(0.5) {
                        r.set(x, y);
                    }
                }
            }
            r.into()
        }
        Category::PInj => random_pinj(src, dst, rng).into(),
        Category::DStoch => random_stoch(space.src().size, rng).into(),
    }
}

fn random_pinj<R: Rng + ?Sized>(src: FinObject, dst: FinObject, rng: &mut R) -> PInjMorphism {
    let mut free: Vec<usize> = (0..dst.size).collect();
    let mut map = vec![None; src.size];
    for slot in map.iter_mut() {
        if !free.is_empty() && rng.gen_bool(0.6) {
            let i = rng.gen_range(0..free.len());
            *slot = Some(free.swap_remove(i));
        }
    }
    PInjMorphism::new(src, dst, map).expect("targets drawn without replacement")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generated_matrices_are_subnormalized() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 1..=4 {
            for _ in 0..200 {
                let g = random_stoch(n, &mut rng);
                assert!(g.is_subnormalized(1e-12));
                let f = random_stoch_below(&g, &mut rng);
                assert!(f.is_subnormalized(1e-12));
                assert!(f.leq_within(&g, 0.0).unwrap());
            }
        }
    }
}
