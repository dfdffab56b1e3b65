//! Shared evaluator plumbing: residual combinators, bracket averaging at a
//! concrete index tuple, and deterministic tuple sampling for the checks
//! that cannot afford every canonical component.

use std::collections::BTreeSet;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::tensor::rank::{binomial, rank_ascending, sort_parity, sym_len, unrank_ascending, unrank_multiset};
use crate::tensor::shuffle::Shuffle;
use crate::tensor::{AntisymTensor, SymTensor, MAX_ORDER};
use crate::verify::Residual;

/// Signed row of a tail table at an arbitrarily ordered leading block:
/// returns the row over the trailing index and the permutation sign, or
/// None when the block repeats an index.
pub fn tail_row<'a>(table: &'a [f64], dim: usize, block: &[usize]) -> Option<(&'a [f64], f64)> {
    let mut b = [0usize; MAX_ORDER];
    let k = block.len();
    b[..k].copy_from_slice(block);
    let even = sort_parity(&mut b[..k])?;
    let r = rank_ascending(&b[..k]);
    Some((&table[r * dim..r * dim + dim], if even { 1.0 } else { -1.0 }))
}

/// Residual for a scalar identity `lhs == rhs`.
pub fn scalar(lhs: f64, rhs: f64) -> Residual {
    Residual::new((lhs - rhs).abs(), lhs.abs().max(rhs.abs()))
}

/// Residual for a quantity that must vanish; `scale` is the magnitude the
/// cancellation ran through, so an all-zero input cannot pass by accident.
pub fn vanish(found: f64, scale: f64) -> Residual {
    Residual::new(found, scale)
}

/// Keep the worse of two residuals (by relative size).
pub fn worst(a: Residual, b: Residual) -> Residual {
    if a.rel() >= b.rel() {
        a
    } else {
        b
    }
}

/// Componentwise max-abs difference of two antisymmetric tensors.
pub fn diff_antisym(a: &AntisymTensor, b: &AntisymTensor) -> Residual {
    debug_assert_eq!(a.dim(), b.dim());
    debug_assert_eq!(a.order(), b.order());
    let abs = a
        .values()
        .iter()
        .zip(b.values())
        .map(|(x, y)| (x - y).abs())
        .fold(0.0f64, f64::max);
    Residual::new(abs, a.max_abs().max(b.max_abs()))
}

/// Componentwise max-abs difference of two symmetric tensors.
pub fn diff_sym(a: &SymTensor, b: &SymTensor) -> Residual {
    debug_assert_eq!(a.dim(), b.dim());
    debug_assert_eq!(a.order(), b.order());
    let abs = a
        .values()
        .iter()
        .zip(b.values())
        .map(|(x, y)| (x - y).abs())
        .fold(0.0f64, f64::max);
    Residual::new(abs, a.max_abs().max(b.max_abs()))
}

/// Signed average of `raw` over antisymmetrization coset representatives,
/// evaluated at the written index sequence `idx`.
pub fn bracket_alt(reps: &[Shuffle], idx: &[usize], mut raw: impl FnMut(&[usize]) -> f64) -> f64 {
    let k = idx.len();
    let mut arranged = [0usize; MAX_ORDER];
    let mut acc = 0.0;
    for rep in reps {
        for (slot, &p) in rep.positions.iter().enumerate() {
            arranged[slot] = idx[p];
        }
        acc += rep.sign * raw(&arranged[..k]);
    }
    acc / reps.len() as f64
}

/// Unsigned average of `raw` over symmetrization coset representatives.
pub fn bracket_sym(reps: &[Shuffle], idx: &[usize], mut raw: impl FnMut(&[usize]) -> f64) -> f64 {
    let k = idx.len();
    let mut arranged = [0usize; MAX_ORDER];
    let mut acc = 0.0;
    for rep in reps {
        for (slot, &p) in rep.positions.iter().enumerate() {
            arranged[slot] = idx[p];
        }
        acc += raw(&arranged[..k]);
    }
    acc / reps.len() as f64
}

/// All k! permutations of 0..k with parity signs. The shuffle machinery
/// cannot express this case: it treats equal-size blocks as exchangeable,
/// which is only sound when the raw expression really has that symmetry.
pub fn permutations(k: usize) -> Vec<(Vec<usize>, f64)> {
    assert!(k <= 8);
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..k).collect();
    let mut c = vec![0usize; k];
    let mut sign = 1.0;
    out.push((perm.clone(), sign));
    let mut i = 0;
    while i < k {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            sign = -sign;
            out.push((perm.clone(), sign));
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

/// Up to `limit` distinct ascending `order`-tuples below `dim`, the full set
/// when it is small enough. Sampled ranks come from the caller's seeded
/// stream, so the choice is reproducible.
pub fn sample_ascending(
    rng: &mut ChaCha8Rng,
    dim: usize,
    order: usize,
    limit: usize,
) -> Vec<Vec<usize>> {
    let total = binomial(dim, order);
    let mut picks = Vec::new();
    if total as usize <= limit {
        picks.extend(0..total as usize);
    } else {
        let mut seen = BTreeSet::new();
        while seen.len() < limit {
            seen.insert(rng.gen_range(0..total) as usize);
        }
        picks.extend(seen);
    }
    picks
        .into_iter()
        .map(|r| {
            let mut t = vec![0usize; order];
            unrank_ascending(r, order, &mut t);
            t
        })
        .collect()
}

/// Up to `limit` distinct ascending `order`-multisets below `dim`.
pub fn sample_multisets(
    rng: &mut ChaCha8Rng,
    dim: usize,
    order: usize,
    limit: usize,
) -> Vec<Vec<usize>> {
    let total = sym_len(dim, order);
    let mut picks = Vec::new();
    if total <= limit {
        picks.extend(0..total);
    } else {
        let mut seen = BTreeSet::new();
        while seen.len() < limit {
            seen.insert(rng.gen_range(0..total));
        }
        picks.extend(seen);
    }
    picks
        .into_iter()
        .map(|r| {
            let mut t = vec![0usize; order];
            unrank_multiset(r, order, &mut t);
            t
        })
        .collect()
}

/// Applicability predicates used by the catalogue.
pub fn always(_: usize) -> bool {
    true
}
pub fn ge3(n: usize) -> bool {
    n >= 3
}
pub fn ge4(n: usize) -> bool {
    n >= 4
}
pub fn ge5(n: usize) -> bool {
    n >= 5
}
pub fn eq3(n: usize) -> bool {
    n == 3
}
pub fn eq4(n: usize) -> bool {
    n == 4
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn sampling_is_exhaustive_below_the_limit() {
        let mut rng = ChaCha8Rng::from_seed([7u8; 32]);
        let all = sample_ascending(&mut rng, 5, 2, 100);
        assert_eq!(all.len(), 10);
        assert_eq!(all[0], vec![0, 1]);
        assert_eq!(all[9], vec![3, 4]);
    }

    #[test]
    fn sampling_caps_and_is_deterministic() {
        let mut a = ChaCha8Rng::from_seed([9u8; 32]);
        let mut b = ChaCha8Rng::from_seed([9u8; 32]);
        let s1 = sample_ascending(&mut a, 24, 5, 50);
        let s2 = sample_ascending(&mut b, 24, 5, 50);
        assert_eq!(s1.len(), 50);
        assert_eq!(s1, s2);
        for t in &s1 {
            assert!(t.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn permutation_signs_sum_to_zero_and_cover_everything() {
        for k in 1..=5 {
            let perms = permutations(k);
            let count: usize = (1..=k).product();
            assert_eq!(perms.len(), count);
            let mut seen = BTreeSet::new();
            for (p, _) in &perms {
                seen.insert(p.clone());
            }
            assert_eq!(seen.len(), count);
            if k >= 2 {
                let total: f64 = perms.iter().map(|(_, s)| s).sum();
                assert_eq!(total, 0.0);
            }
        }
        // Spot-check a parity: (1, 0, 2) is odd.
        let p3 = permutations(3);
        let swapped = p3.iter().find(|(p, _)| p == &vec![1, 0, 2]).unwrap();
        assert_eq!(swapped.1, -1.0);
    }

    #[test]
    fn residual_combinators_track_the_worse_side() {
        let a = Residual::new(1e-3, 10.0);
        let b = Residual::new(1e-6, 1.0);
        assert_eq!(worst(a, b).abs, 1e-3);
        let s = scalar(2.0, 2.5);
        assert!((s.abs - 0.5).abs() < 1e-15);
        assert!((s.scale - 2.5).abs() < 1e-15);
    }
}
