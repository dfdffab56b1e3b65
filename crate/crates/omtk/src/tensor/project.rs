//! Unit-weight (anti)symmetrization driven by coset shuffles.

use super::rank;
use super::shuffle::{shuffles, Shuffle};
use super::{AntisymTensor, SymTensor, MAX_ORDER};
use crate::par;

/// Unit-weight antisymmetrization of `f` over all `order` indices.
///
/// `families` declares blocks within which `f` is already alternating (sign
/// included), as `(size, count)` with equal-size blocks in one family
/// exchangeable without sign or value change. The projection then averages
/// signed coset representatives only.
pub fn antisymmetrize(
    dim: usize,
    order: usize,
    families: &[(usize, usize)],
    f: impl Fn(&[usize]) -> f64 + Sync,
) -> AntisymTensor {
    assert!(order <= MAX_ORDER);
    let len = rank::antisym_len(dim, order);
    if len == 0 {
        return AntisymTensor::zero(dim, order);
    }
    let sh = shuffles(order, families);
    let weight = 1.0 / sh.len() as f64;
    let values = par::fill_chunked(len, |start, chunk| {
        let mut tuple = vec![0usize; order];
        rank::unrank_ascending(start, order, &mut tuple);
        let mut arranged = [0usize; MAX_ORDER];
        for slot in chunk.iter_mut() {
            let mut acc = 0.0;
            for Shuffle { positions, sign } in &sh {
                for (k, &p) in positions.iter().enumerate() {
                    arranged[k] = tuple[p];
                }
                acc += sign * f(&arranged[..order]);
            }
            *slot = acc * weight;
            rank::next_combination(&mut tuple, dim);
        }
    });
    AntisymTensor::from_values(dim, order, values)
}

/// Unit-weight symmetrization of `f` over all `order` indices; `families`
/// declares blocks within which `f` is already symmetric.
pub fn symmetrize(
    dim: usize,
    order: usize,
    families: &[(usize, usize)],
    f: impl Fn(&[usize]) -> f64 + Sync,
) -> SymTensor {
    assert!(order <= MAX_ORDER);
    let len = rank::sym_len(dim, order);
    let sh = shuffles(order, families);
    let weight = 1.0 / sh.len() as f64;
    let values = par::fill_chunked(len, |start, chunk| {
        let mut tuple = vec![0usize; order];
        rank::unrank_multiset(start, order, &mut tuple);
        let mut arranged = [0usize; MAX_ORDER];
        for slot in chunk.iter_mut() {
            let mut acc = 0.0;
            for Shuffle { positions, .. } in &sh {
                for (k, &p) in positions.iter().enumerate() {
                    arranged[k] = tuple[p];
                }
                acc += f(&arranged[..order]);
            }
            *slot = acc * weight;
            rank::next_multiset(&mut tuple, dim);
        }
    });
    SymTensor::from_values(dim, order, values)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Reference projections summing all `order!` permutations.
    fn heap_permutations(order: usize) -> Vec<(Vec<usize>, f64)> {
        let mut perms = Vec::new();
        let mut a: Vec<usize> = (0..order).collect();
        let mut c = vec![0usize; order];
        let mut sign = 1.0;
        perms.push((a.clone(), sign));
        let mut i = 0;
        while i < order {
            if c[i] < i {
                if i % 2 == 0 {
                    a.swap(0, i);
                } else {
                    a.swap(c[i], i);
                }
                sign = -sign;
                perms.push((a.clone(), sign));
                c[i] += 1;
                i = 0;
            } else {
                c[i] = 0;
                i += 1;
            }
        }
        perms
    }

    fn brute_antisym(
        dim: usize,
        order: usize,
        f: &dyn Fn(&[usize]) -> f64,
    ) -> AntisymTensor {
        let perms = heap_permutations(order);
        let weight = 1.0 / perms.len() as f64;
        let mut out = AntisymTensor::zero(dim, order);
        let mut tuple: Vec<usize> = (0..order).collect();
        if out.len() == 0 {
            return out;
        }
        for r in 0..out.len() {
            let mut acc = 0.0;
            let mut arranged = vec![0usize; order];
            for (perm, sign) in &perms {
                for (k, &p) in perm.iter().enumerate() {
                    arranged[k] = tuple[p];
                }
                acc += sign * f(&arranged);
            }
            out.values_mut()[r] = acc * weight;
            rank::next_combination(&mut tuple, dim);
        }
        out
    }

    fn brute_sym(dim: usize, order: usize, f: &dyn Fn(&[usize]) -> f64) -> SymTensor {
        let perms = heap_permutations(order);
        let weight = 1.0 / perms.len() as f64;
        let mut out = SymTensor::zero(dim, order);
        let mut tuple = vec![0usize; order];
        for r in 0..out.len() {
            let mut acc = 0.0;
            let mut arranged = vec![0usize; order];
            for (perm, _) in &perms {
                for (k, &p) in perm.iter().enumerate() {
                    arranged[k] = tuple[p];
                }
                acc += f(&arranged);
            }
            out.values_mut()[r] = acc * weight;
            rank::next_multiset(&mut tuple, dim);
        }
        out
    }

    /// Deterministic pseudo-random source tensor value.
    fn noise(seed: u64, idx: &[usize]) -> f64 {
        let mut h = seed.wrapping_mul(0x9e3779b97f4a7c15);
        for &i in idx {
            h ^= (i as u64).wrapping_add(0x517cc1b727220a95);
            h = h.rotate_left(17).wrapping_mul(0x2545f4914f6cdd1d);
        }
        (h >> 11) as f64 / (1u64 << 53) as f64 - 0.5
    }

    #[test]
    fn antisymmetrize_trivial_blocks_matches_permutation_sum() {
        for dim in [4usize, 5] {
            for order in [2usize, 3, 4] {
                let f = |idx: &[usize]| noise(7, idx);
                let fast = antisymmetrize(dim, order, &[(1, order)], f);
                let brute = brute_antisym(dim, order, &f);
                for (a, b) in fast.values().iter().zip(brute.values()) {
                    assert!((a - b).abs() < 1e-13, "dim {dim} order {order}");
                }
            }
        }
    }

    #[test]
    fn antisymmetrize_block_structure_matches_permutation_sum() {
        // source alternating within two 2-blocks, exchangeable
        let dim = 6;
        let pair = |a: usize, b: usize| noise(11, &[a.min(b), a.max(b)]) * if a < b { 1.0 } else { -1.0 };
        let f = |idx: &[usize]| {
            if idx[0] == idx[1] || idx[2] == idx[3] {
                0.0
            } else {
                pair(idx[0], idx[1]) * pair(idx[2], idx[3]) + pair(idx[2], idx[3]) * pair(idx[0], idx[1])
            }
        };
        let fast = antisymmetrize(dim, 4, &[(2, 2)], f);
        let brute = brute_antisym(dim, 4, &f);
        for (a, b) in fast.values().iter().zip(brute.values()) {
            assert!((a - b).abs() < 1e-13);
        }
    }

    #[test]
    fn antisymmetrize_mixed_blocks_match() {
        // alternating 2-block plus two free slots
        let dim = 6;
        let pair = |a: usize, b: usize| noise(3, &[a.min(b), a.max(b)]) * if a < b { 1.0 } else { -1.0 };
        let f = |idx: &[usize]| {
            if idx[0] == idx[1] {
                0.0
            } else {
                pair(idx[0], idx[1]) * noise(5, &[idx[2]]) * noise(9, &idx[3..4])
            }
        };
        let fast = antisymmetrize(dim, 4, &[(2, 1), (1, 2)], f);
        let brute = brute_antisym(dim, 4, &f);
        for (a, b) in fast.values().iter().zip(brute.values()) {
            assert!((a - b).abs() < 1e-13);
        }
    }

    #[test]
    fn symmetrize_matches_permutation_sum() {
        let dim = 5;
        let sym2 = |a: usize, b: usize| noise(13, &[a.min(b), a.max(b)]);
        let f = |idx: &[usize]| sym2(idx[0], idx[1]) * sym2(idx[2], idx[3]);
        let fast = symmetrize(dim, 4, &[(2, 2)], f);
        let brute = brute_sym(dim, 4, &f);
        for (a, b) in fast.values().iter().zip(brute.values()) {
            assert!((a - b).abs() < 1e-13);
        }
    }

    #[test]
    fn order_above_dim_is_zero_object() {
        let t = antisymmetrize(3, 5, &[(1, 5)], |_| 1.0);
        assert_eq!(t.len(), 0);
        assert_eq!(t.get(&[0, 1, 2, 1, 0]), 0.0);
    }
}
