//! Combinatorial ranking of index tuples.
//!
//! Strictly ascending tuples are ranked colexicographically:
//! `rank(c_1 < ... < c_q) = sum_i C(c_i, i)`. Rank 0 is `(0, 1, ..., q-1)`
//! and the enumeration is independent of the ambient dimension. Multisets
//! (for symmetric storage) map to ascending tuples by `c_i = m_i + i - 1`
//! before ranking.

use std::sync::OnceLock;

const N_MAX: usize = 256;
const K_MAX: usize = 20;

fn table() -> &'static [[u64; K_MAX + 1]; N_MAX + 1] {
    static TABLE: OnceLock<Box<[[u64; K_MAX + 1]; N_MAX + 1]>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = Box::new([[0u64; K_MAX + 1]; N_MAX + 1]);
        for n in 0..=N_MAX {
            t[n][0] = 1;
            for k in 1..=K_MAX.min(n) {
                t[n][k] = t[n - 1][k - 1].saturating_add(t[n - 1][k]);
            }
        }
        t
    })
}

/// Binomial coefficient, saturating at `u64::MAX`.
pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    if n <= N_MAX && k <= K_MAX {
        return table()[n][k];
    }
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// Number of stored components of an antisymmetric tensor: `C(dim, order)`,
/// zero when the order exceeds the dimension.
pub fn antisym_len(dim: usize, order: usize) -> usize {
    binomial(dim, order) as usize
}

/// Number of stored components of a symmetric tensor: `C(dim + order - 1, order)`.
pub fn sym_len(dim: usize, order: usize) -> usize {
    if order == 0 {
        return 1;
    }
    binomial(dim + order - 1, order) as usize
}

/// Colexicographic rank of a strictly ascending tuple.
#[inline]
pub fn rank_ascending(tuple: &[usize]) -> usize {
    let mut r = 0u64;
    for (i, &c) in tuple.iter().enumerate() {
        r += binomial(c, i + 1);
    }
    r as usize
}

/// Inverse of [`rank_ascending`] for tuples of length `order`.
pub fn unrank_ascending(mut rank: usize, order: usize, out: &mut [usize]) {
    debug_assert_eq!(out.len(), order);
    for i in (1..=order).rev() {
        // largest c with C(c, i) <= rank
        let mut c = i - 1;
        let mut next = binomial(c + 1, i);
        while next as usize <= rank {
            c += 1;
            next = binomial(c + 1, i);
        }
        rank -= binomial(c, i) as usize;
        out[i - 1] = c;
    }
}

/// Rank of a non-decreasing multiset under symmetric storage.
#[inline]
pub fn rank_multiset(tuple: &[usize]) -> usize {
    let mut r = 0u64;
    for (i, &c) in tuple.iter().enumerate() {
        r += binomial(c + i, i + 1);
    }
    r as usize
}

/// Inverse of [`rank_multiset`].
pub fn unrank_multiset(rank: usize, order: usize, out: &mut [usize]) {
    unrank_ascending(rank, order, out);
    for (i, c) in out.iter_mut().enumerate() {
        *c -= i;
    }
}

/// Sort a small index buffer in place, returning `None` on a repeated index,
/// otherwise `Some(true)` for an even permutation and `Some(false)` for odd.
#[inline]
pub fn sort_parity(buf: &mut [usize]) -> Option<bool> {
    let mut swaps = 0usize;
    for i in 1..buf.len() {
        let mut j = i;
        while j > 0 && buf[j - 1] >= buf[j] {
            if buf[j - 1] == buf[j] {
                return None;
            }
            buf.swap(j - 1, j);
            swaps += 1;
            j -= 1;
        }
    }
    Some(swaps % 2 == 0)
}

/// Parity sign of the permutation that moves the listed positions (strictly
/// ascending) of a tuple to its front, preserving relative order elsewhere.
#[inline]
pub fn front_sign(positions: &[usize]) -> f64 {
    let mut inv = 0usize;
    for (i, &p) in positions.iter().enumerate() {
        inv += p - i;
    }
    if inv % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Advance a strictly ascending combination within `0..dim` to its colex
/// successor. Returns `false` past the last combination.
#[inline]
pub fn next_combination(tuple: &mut [usize], dim: usize) -> bool {
    let q = tuple.len();
    for i in 0..q {
        let limit = if i + 1 < q { tuple[i + 1] } else { dim };
        if tuple[i] + 1 < limit {
            tuple[i] += 1;
            for (j, slot) in tuple.iter_mut().enumerate().take(i) {
                *slot = j;
            }
            return true;
        }
    }
    false
}

/// Advance a non-decreasing multiset within `0..dim` to its successor.
#[inline]
pub fn next_multiset(tuple: &mut [usize], dim: usize) -> bool {
    let q = tuple.len();
    for i in 0..q {
        let limit = if i + 1 < q { tuple[i + 1] + 1 } else { dim };
        if tuple[i] + 1 < limit {
            tuple[i] += 1;
            for slot in tuple.iter_mut().take(i) {
                *slot = 0;
            }
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_basics() {
        assert_eq!(binomial(0, 0), 1);
        assert_eq!(binomial(8, 3), 56);
        assert_eq!(binomial(24, 9), 1_307_504);
        assert_eq!(binomial(35, 11), 417_225_900);
        assert_eq!(binomial(5, 9), 0);
    }

    #[test]
    fn rank_roundtrip_exhaustive() {
        for dim in 1..=9 {
            for order in 1..=dim {
                let mut tuple: Vec<usize> = (0..order).collect();
                let mut expect = 0usize;
                loop {
                    assert_eq!(rank_ascending(&tuple), expect);
                    let mut back = vec![0; order];
                    unrank_ascending(expect, order, &mut back);
                    assert_eq!(back, tuple);
                    expect += 1;
                    if !next_combination(&mut tuple, dim) {
                        break;
                    }
                }
                assert_eq!(expect, antisym_len(dim, order));
            }
        }
    }

    #[test]
    fn multiset_roundtrip_exhaustive() {
        for dim in 1..=6 {
            for order in 1..=4 {
                let mut tuple = vec![0usize; order];
                let mut expect = 0usize;
                loop {
                    assert_eq!(rank_multiset(&tuple), expect);
                    let mut back = vec![0; order];
                    unrank_multiset(expect, order, &mut back);
                    assert_eq!(back, tuple);
                    expect += 1;
                    if !next_multiset(&mut tuple, dim) {
                        break;
                    }
                }
                assert_eq!(expect, sym_len(dim, order));
            }
        }
    }

    /// Brute-force parity: count inversions of the original buffer.
    fn parity_oracle(buf: &[usize]) -> Option<bool> {
        let mut inv = 0;
        for i in 0..buf.len() {
            for j in i + 1..buf.len() {
                if buf[i] == buf[j] {
                    return None;
                }
                if buf[i] > buf[j] {
                    inv += 1;
                }
            }
        }
        Some(inv % 2 == 0)
    }

    #[test]
    fn sort_parity_matches_inversion_count() {
        // all 4^4 buffers over a small alphabet, repeats included
        for code in 0..4096usize {
            let buf: Vec<usize> = (0..4).map(|i| (code >> (3 * i)) & 7).collect();
            let expect = parity_oracle(&buf);
            let mut work = buf.clone();
            let got = sort_parity(&mut work);
            assert_eq!(got, expect, "buf {buf:?}");
            if got.is_some() {
                assert!(work.windows(2).all(|w| w[0] < w[1]));
            }
        }
    }

    #[test]
    fn front_sign_matches_explicit_permutation() {
        // moving positions P to the front of (0..q) and counting inversions
        for q in 2..=7 {
            for k in 1..q {
                let mut pos: Vec<usize> = (0..k).collect();
                loop {
                    let mut arranged: Vec<usize> = pos.clone();
                    for i in 0..q {
                        if !pos.contains(&i) {
                            arranged.push(i);
                        }
                    }
                    let expect = if parity_oracle(&arranged).unwrap() {
                        1.0
                    } else {
                        -1.0
                    };
                    assert_eq!(front_sign(&pos), expect);
                    if !next_combination(&mut pos, q) {
                        break;
                    }
                }
            }
        }
    }
}
