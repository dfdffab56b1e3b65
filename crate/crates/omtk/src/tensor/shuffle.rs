//! Coset representatives for (anti)symmetrization over internally
//! (anti)symmetric blocks.
//!
//! Projecting a function that is already alternating (or symmetric) within
//! declared index blocks only needs one representative per coset of the
//! block subgroup: `q! / prod(size_i!)` terms instead of `q!`. Families of
//! equal-size blocks that the function treats as exchangeable shrink this
//! further by `count!` per family; block exchange must then be an even
//! permutation (guaranteed for even block sizes) or sign-free (symmetric
//! projection).

/// One coset representative: `positions[k]` is the source slot (within the
/// ascending canonical tuple) feeding argument slot `k`.
pub struct Shuffle {
    pub positions: Vec<usize>,
    pub sign: f64,
}

/// Block layout: `(size, count)` pairs; blocks within a pair are
/// interchangeable.
pub fn shuffles(order: usize, families: &[(usize, usize)]) -> Vec<Shuffle> {
    let total: usize = families.iter().map(|&(s, c)| s * c).sum();
    assert_eq!(total, order, "block sizes must sum to the order");
    let mut out = Vec::new();
    let mut free: Vec<usize> = (0..order).collect();
    let mut acc = Vec::with_capacity(order);
    rec(families, 0, 0, &mut free, &mut acc, &mut out);
    out
}

fn rec(
    families: &[(usize, usize)],
    fam: usize,
    within: usize,
    free: &mut Vec<usize>,
    acc: &mut Vec<usize>,
    out: &mut Vec<Shuffle>,
) {
    if fam == families.len() {
        out.push(Shuffle {
            positions: acc.clone(),
            sign: perm_sign(acc),
        });
        return;
    }
    let (size, count) = families[fam];
    let (next_fam, next_within) = if within + 1 == count {
        (fam + 1, 0)
    } else {
        (fam, within + 1)
    };
    // Interchangeable blocks are canonicalized by forcing each later block of
    // the family to start with the smallest remaining slot; the first element
    // of every block in the family is then increasing automatically.
    let anchor_first = within > 0 || count > 1;
    let choices = choose_ascending(free, size, anchor_first);
    for subset in choices {
        let saved = free.clone();
        free.retain(|p| !subset.contains(p));
        acc.extend_from_slice(&subset);
        rec(families, next_fam, next_within, free, acc, out);
        acc.truncate(acc.len() - size);
        *free = saved;
    }
}

/// Ascending `size`-subsets of `free`; with `anchor_first` the smallest free
/// slot is forced into the subset (canonical order among exchangeable blocks).
fn choose_ascending(free: &[usize], size: usize, anchor_first: bool) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(size);
    fn go(free: &[usize], start: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..free.len() {
            cur.push(free[i]);
            go(free, i + 1, size, cur, out);
            cur.pop();
        }
    }
    if anchor_first {
        if free.is_empty() {
            return out;
        }
        cur.push(free[0]);
        go(free, 1, size, &mut cur, &mut out);
    } else {
        go(free, 0, size, &mut cur, &mut out);
    }
    out
}

fn perm_sign(perm: &[usize]) -> f64 {
    let mut inv = 0usize;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count(order: usize, families: &[(usize, usize)]) -> usize {
        shuffles(order, families).len()
    }

    #[test]
    fn coset_counts() {
        assert_eq!(count(4, &[(1, 4)]), 24);
        assert_eq!(count(4, &[(2, 2)]), 3); // two exchangeable pairs
        assert_eq!(count(6, &[(2, 3)]), 15);
        assert_eq!(count(7, &[(4, 1), (2, 1), (1, 1)]), 105);
        assert_eq!(count(9, &[(6, 1), (2, 1), (1, 1)]), 252);
        assert_eq!(count(8, &[(2, 4)]), 105);
        assert_eq!(count(9, &[(2, 4), (1, 1)]), 945);
        assert_eq!(count(6, &[(3, 2)]), 10);
    }

    #[test]
    fn signs_match_inversion_parity() {
        for sh in shuffles(5, &[(2, 1), (2, 1), (1, 1)]) {
            assert_eq!(sh.sign, perm_sign(&sh.positions));
        }
    }

    #[test]
    fn exchangeable_blocks_exchange_evenly() {
        // swapping two blocks of even size is an even permutation, so
        // canonicalizing their order loses no sign information
        let base: Vec<usize> = (0..8).collect();
        let mut swapped = base.clone();
        swapped.rotate_left(2); // move first 2-block behind the next one
        let _ = swapped;
        for size in [2usize, 4] {
            let mut arranged: Vec<usize> = Vec::new();
            arranged.extend(size..2 * size);
            arranged.extend(0..size);
            assert_eq!(perm_sign(&arranged), 1.0, "block size {size}");
        }
    }
}
