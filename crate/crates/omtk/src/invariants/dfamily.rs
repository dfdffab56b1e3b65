//! The symmetric d-family: chained contractions of d with itself,
//! symmetrized with unit weight at every order.

use std::collections::BTreeMap;

use super::{Dense3, PairTable};
use crate::tensor::rank;
use crate::tensor::{symmetrize, SymTensor};

/// Dense order-4 chain table: `get(p,q,r,s) = sum_y d_pqy d_yrs`.
#[derive(Debug, Clone)]
pub struct Dense4 {
    dim: usize,
    v: Vec<f64>,
}

impl Dense4 {
    #[inline]
    pub fn get(&self, p: usize, q: usize, r: usize, s: usize) -> f64 {
        self.v[((p * self.dim + q) * self.dim + r) * self.dim + s]
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
}

/// Build the two-link chain table contracted over the middle index.
pub fn dd_chain(d_dense: &Dense3, d_pairs: &PairTable) -> Dense4 {
    let dim = d_dense.dim();
    let mut v = vec![0.0; dim * dim * dim * dim];
    for p in 0..dim {
        for q in 0..dim {
            let base = (p * dim + q) * dim * dim;
            for &(y, w) in d_pairs.list(p, q) {
                let y = y as usize;
                for r in 0..dim {
                    let row = &mut v[base + r * dim..base + r * dim + dim];
                    for (s, slot) in row.iter_mut().enumerate() {
                        *slot += w * d_dense.get(y, r, s);
                    }
                }
            }
        }
    }
    Dense4 { dim, v }
}

/// One chain step: contract the last slot of a symmetric order r-1 member
/// with d and symmetrize over (r-2, 2) block cosets.
///
/// This reproduces the family member only up to order five, where the
/// last-exempt and fully symmetric members of the predecessor still
/// coincide. From order six on the family is assembled through the
/// last-exempt route instead; see `d_family`.
pub fn d_chain(prev: &SymTensor, d_pairs: &PairTable) -> SymTensor {
    let dim = prev.dim();
    let r = prev.order() + 1;
    symmetrize(dim, r, &[(r - 2, 1), (2, 1)], |idx| {
        let (head, pair) = idx.split_at(r - 2);
        let mut buf = [0usize; 16];
        buf[..r - 2].copy_from_slice(head);
        let mut acc = 0.0;
        for &(t, v) in d_pairs.list(pair[0], pair[1]) {
            buf[r - 2] = t as usize;
            acc += v * prev.get(&buf[..r - 1]);
        }
        acc
    })
}

/// d-family members for orders 2..=max_r; order 2 is the Kronecker delta.
///
/// Orders >= 4 fold the exempt index of the last-exempt member back in with
/// one more coset average. Chaining fully symmetric predecessors instead
/// would silently mix the order-six member with the triple-vertex tensor:
/// the chain contracts the predecessor's last slot, and head-first
/// symmetrization of the raw chain yields the last-exempt member, which
/// differs from the fully symmetric one starting at order five.
pub fn d_family(
    d3: &SymTensor,
    le: &BTreeMap<usize, Vec<SymTensor>>,
    max_r: usize,
) -> BTreeMap<usize, SymTensor> {
    let dim = d3.dim();
    let mut map = BTreeMap::new();
    let mut delta = SymTensor::zero(dim, 2);
    for i in 0..dim {
        delta.values_mut()[rank::rank_multiset(&[i, i])] = 1.0;
    }
    map.insert(2, delta);
    map.insert(3, d3.clone());
    for r in 4..=max_r {
        let part = &le[&r];
        let full = symmetrize(dim, r, &[(r - 1, 1), (1, 1)], |idx| {
            part[idx[r - 1]].get(&idx[..r - 1])
        });
        map.insert(r, full);
    }
    map
}

/// Last-exempt family: for each fixed trailing index q, the chain with the
/// remaining r-1 indices symmetrized. Orders 3..=max_r.
pub fn d_last_exempt_family(
    d_dense: &Dense3,
    d_pairs: &PairTable,
    max_r: usize,
) -> BTreeMap<usize, Vec<SymTensor>> {
    let dim = d_dense.dim();
    let mut map: BTreeMap<usize, Vec<SymTensor>> = BTreeMap::new();
    let mut base = Vec::with_capacity(dim);
    for q in 0..dim {
        let mut t = SymTensor::zero(dim, 2);
        for a in 0..dim {
            for b in a..dim {
                let idx = [a, b];
                t.values_mut()[rank::rank_multiset(&idx)] = d_dense.get(a, b, q);
            }
        }
        base.push(t);
    }
    map.insert(3, base);
    for r in 4..=max_r {
        let prev = &map[&(r - 1)];
        let level = (0..dim)
            .map(|q| {
                symmetrize(dim, r - 1, &[(r - 2, 1), (1, 1)], |idx| {
                    let (head, single) = idx.split_at(r - 2);
                    let mut acc = 0.0;
                    for &(t, v) in d_pairs.list(single[0], q) {
                        acc += v * prev[t as usize].get(head);
                    }
                    acc
                })
            })
            .collect();
        map.insert(r, level);
    }
    map
}

/// Order-5 chain with the middle chain index exempt: for each q, the
/// (a,b,c,d)-symmetrization of `sum_{x,y} d_abx d_xqy d_ycd`.
pub fn d5_mid_exempt(dd: &Dense4, d_pairs: &PairTable) -> Vec<SymTensor> {
    let dim = dd.dim();
    (0..dim)
        .map(|q| {
            symmetrize(dim, 4, &[(2, 2)], |idx| {
                let mut acc = 0.0;
                for &(x, v) in d_pairs.list(idx[0], idx[1]) {
                    acc += v * dd.get(x as usize, q, idx[2], idx[3]);
                }
                acc
            })
        })
        .collect()
}

/// Order-6 chain with the second chain slot exempt: for each q, the
/// (a,b,c,d,e)-symmetrization of `sum d_abx d_xqy d_ycz d_zde`.
pub fn d6_mid_exempt(dd: &Dense4, d_pairs: &PairTable) -> Vec<SymTensor> {
    let dim = dd.dim();
    (0..dim)
        .map(|q| {
            symmetrize(dim, 5, &[(2, 1), (1, 1), (2, 1)], |idx| {
                let mut acc = 0.0;
                for &(x, vx) in d_pairs.list(idx[0], idx[1]) {
                    for &(z, vz) in d_pairs.list(idx[3], idx[4]) {
                        acc += vx * vz * dd.get(x as usize, q, idx[2], z as usize);
                    }
                }
                acc
            })
        })
        .collect()
}

/// Triple-vertex order-6 tensor: symmetrization of
/// `d_ab^x d_cd^y d_ef^z d_xyz` over all six free indices.
pub fn d6_prime(d_dense: &Dense3, d_pairs: &PairTable) -> SymTensor {
    let dim = d_dense.dim();
    symmetrize(dim, 6, &[(2, 3)], |idx| {
        let mut acc = 0.0;
        for &(x, vx) in d_pairs.list(idx[0], idx[1]) {
            for &(y, vy) in d_pairs.list(idx[2], idx[3]) {
                let vxy = vx * vy;
                for &(z, vz) in d_pairs.list(idx[4], idx[5]) {
                    acc += vxy * vz * d_dense.get(x as usize, y as usize, z as usize);
                }
            }
        }
        acc
    })
}

/// Triple-vertex tensor with the last index exempt: for each q, the
/// (a,b,c,d,e)-symmetrization of `d_ab^x d_cd^y d_eq^z d_xyz`.
pub fn d6_prime_last_exempt(dd: &Dense4, d_pairs: &PairTable) -> Vec<SymTensor> {
    let dim = dd.dim();
    (0..dim)
        .map(|q| {
            symmetrize(dim, 5, &[(2, 2), (1, 1)], |idx| {
                let mut acc = 0.0;
                for &(x, vx) in d_pairs.list(idx[0], idx[1]) {
                    for &(y, vy) in d_pairs.list(idx[2], idx[3]) {
                        acc += vx * vy * dd.get(idx[4], q, x as usize, y as usize);
                    }
                }
                acc
            })
        })
        .collect()
}

/// Symmetrized delta-d product of order 5.
pub fn ddelta5(d_dense: &Dense3) -> SymTensor {
    let dim = d_dense.dim();
    symmetrize(dim, 5, &[(2, 1), (3, 1)], |idx| {
        if idx[0] == idx[1] {
            d_dense.get(idx[2], idx[3], idx[4])
        } else {
            0.0
        }
    })
}

/// Delta-d product of order 5 with the last d slot exempt: for each q, the
/// (a,b,c,d)-symmetrization of `delta_ab d_cdq`. The delta block and the d
/// block are distinct, so the two pairs are not interchangeable.
pub fn ddelta4_last_exempt(d_dense: &Dense3) -> Vec<SymTensor> {
    let dim = d_dense.dim();
    (0..dim)
        .map(|q| {
            symmetrize(dim, 4, &[(2, 1), (2, 1)], |idx| {
                if idx[0] == idx[1] {
                    d_dense.get(idx[2], idx[3], q)
                } else {
                    0.0
                }
            })
        })
        .collect()
}

/// Symmetrized delta-delta product of order 4.
pub fn deltadelta4(dim: usize) -> SymTensor {
    symmetrize(dim, 4, &[(2, 2)], |idx| {
        if idx[0] == idx[1] && idx[2] == idx[3] {
            1.0
        } else {
            0.0
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::SuBasis;
    use crate::tensor::rank::next_multiset;

    struct Fix {
        dim: usize,
        f_dense: Dense3,
        d_dense: Dense3,
        d_pairs: PairTable,
        d: BTreeMap<usize, SymTensor>,
        le: BTreeMap<usize, Vec<SymTensor>>,
    }

    fn fixture(n: usize) -> Fix {
        let basis = SuBasis::new(n).unwrap();
        let (f, d3) = basis.structure_constants();
        let f_dense = Dense3::from_antisym(&f);
        let d_dense = Dense3::from_sym(&d3);
        let d_pairs = PairTable::new(&d_dense);
        let le = d_last_exempt_family(&d_dense, &d_pairs, 6);
        let d = d_family(&d3, &le, 6);
        Fix {
            dim: basis.dim(),
            f_dense,
            d_dense,
            d_pairs,
            d,
            le,
        }
    }

    fn for_each_multiset(dim: usize, order: usize, mut f: impl FnMut(&[usize])) {
        let mut m = vec![0usize; order];
        loop {
            f(&m);
            if !next_multiset(&mut m, dim) {
                break;
            }
        }
    }

    /// Average of g over every permutation of idx.
    fn full_sym_oracle(idx: &[usize], g: &dyn Fn(&[usize]) -> f64) -> f64 {
        let mut buf = idx.to_vec();
        let k = buf.len();
        let mut c = vec![0usize; k];
        let mut total = g(&buf);
        let mut count = 1usize;
        let mut i = 1;
        while i < k {
            if c[i] < i {
                if i % 2 == 0 {
                    buf.swap(0, i);
                } else {
                    buf.swap(c[i], i);
                }
                total += g(&buf);
                count += 1;
                c[i] += 1;
                i = 1;
            } else {
                c[i] = 0;
                i += 1;
            }
        }
        total / count as f64
    }

    #[test]
    fn order4_matches_three_term_average() {
        let fx = fixture(3);
        let d4 = &fx.d[&4];
        let dd = |i: usize, j: usize, k: usize, l: usize| {
            let mut s = 0.0;
            for t in 0..fx.dim {
                s += fx.d_dense.get(i, j, t) * fx.d_dense.get(k, l, t);
            }
            s
        };
        for_each_multiset(fx.dim, 4, |m| {
            let (i, j, k, l) = (m[0], m[1], m[2], m[3]);
            let want = (dd(i, j, k, l) + dd(j, k, i, l) + dd(k, i, j, l)) / 3.0;
            assert!((d4.get(m) - want).abs() < 1e-13, "mismatch at {m:?}");
        });
    }

    #[test]
    fn order5_matches_full_permutation_sum() {
        let fx = fixture(3);
        let d5 = &fx.d[&5];
        let raw = |idx: &[usize]| {
            let mut acc = 0.0;
            for &(x, vx) in fx.d_pairs.list(idx[0], idx[1]) {
                for &(y, vy) in fx.d_pairs.list(idx[3], idx[4]) {
                    acc += vx * vy * fx.d_dense.get(x as usize, idx[2], y as usize);
                }
            }
            acc
        };
        for_each_multiset(fx.dim, 5, |m| {
            let want = full_sym_oracle(m, &raw);
            assert!((d5.get(m) - want).abs() < 1e-12, "mismatch at {m:?}");
        });
    }

    #[test]
    fn order6_matches_full_permutation_sum_on_sample() {
        let fx = fixture(3);
        let d6 = &fx.d[&6];
        let raw = |idx: &[usize]| {
            let mut acc = 0.0;
            for &(x, vx) in fx.d_pairs.list(idx[0], idx[1]) {
                for &(z, vz) in fx.d_pairs.list(idx[4], idx[5]) {
                    for y in 0..fx.dim {
                        acc += vx
                            * vz
                            * fx.d_dense.get(x as usize, idx[2], y)
                            * fx.d_dense.get(y, idx[3], z as usize);
                    }
                }
            }
            acc
        };
        let mut seen = 0usize;
        for_each_multiset(fx.dim, 6, |m| {
            seen += 1;
            if seen % 7 != 0 {
                return;
            }
            let want = full_sym_oracle(m, &raw);
            assert!((d6.get(m) - want).abs() < 1e-12, "mismatch at {m:?}");
        });
        assert!(seen > 1000);
    }

    #[test]
    fn chain_route_agrees_with_family_through_order_five() {
        let fx = fixture(3);
        let d4 = d_chain(&fx.d[&3], &fx.d_pairs);
        let d5 = d_chain(&d4, &fx.d_pairs);
        for (order, chained) in [(4usize, &d4), (5, &d5)] {
            let family = &fx.d[&order];
            let worst = chained
                .values()
                .iter()
                .zip(family.values())
                .map(|(a, b)| (a - b).abs())
                .fold(0.0f64, f64::max);
            assert!(worst < 1e-13, "order {order} chain deviates by {worst}");
        }
    }

    #[test]
    fn triple_vertex_matches_full_permutation_sum_on_sample() {
        let fx = fixture(3);
        let d6p = d6_prime(&fx.d_dense, &fx.d_pairs);
        let raw = |idx: &[usize]| {
            let mut acc = 0.0;
            for &(x, vx) in fx.d_pairs.list(idx[0], idx[1]) {
                for &(y, vy) in fx.d_pairs.list(idx[2], idx[3]) {
                    for &(z, vz) in fx.d_pairs.list(idx[4], idx[5]) {
                        acc += vx * vy * vz * fx.d_dense.get(x as usize, y as usize, z as usize);
                    }
                }
            }
            acc
        };
        let mut seen = 0usize;
        for_each_multiset(fx.dim, 6, |m| {
            seen += 1;
            if seen % 7 != 0 {
                return;
            }
            let want = full_sym_oracle(m, &raw);
            assert!((d6p.get(m) - want).abs() < 1e-12, "mismatch at {m:?}");
        });
        assert!(seen > 1000);
    }

    #[test]
    fn exempt_variants_average_back_to_symmetric_members() {
        let fx = fixture(3);
        let dd = dd_chain(&fx.d_dense, &fx.d_pairs);
        let le = &fx.le;
        let me5 = d5_mid_exempt(&dd, &fx.d_pairs);
        let me6 = d6_mid_exempt(&dd, &fx.d_pairs);
        let d6p = d6_prime(&fx.d_dense, &fx.d_pairs);
        let d6pe = d6_prime_last_exempt(&dd, &fx.d_pairs);

        for order in [4usize, 5, 6] {
            let full = &fx.d[&order];
            let part = &le[&order];
            for_each_multiset(fx.dim, order, |m| {
                let mut avg = 0.0;
                let mut rest = vec![0usize; order - 1];
                for p in 0..order {
                    for (slot, &v) in m.iter().enumerate().filter(|&(s, _)| s != p) {
                        let at = if slot < p { slot } else { slot - 1 };
                        rest[at] = v;
                    }
                    avg += part[m[p]].get(&rest);
                }
                avg /= order as f64;
                assert!(
                    (full.get(m) - avg).abs() < 1e-12,
                    "last-exempt avg mismatch, order {order} at {m:?}"
                );
            });
        }

        for (order, part, full) in [(5usize, &me5, &fx.d[&5]), (6, &me6, &fx.d[&6])] {
            for_each_multiset(fx.dim, order, |m| {
                let mut avg = 0.0;
                let mut rest = vec![0usize; order - 1];
                for p in 0..order {
                    for (slot, &v) in m.iter().enumerate().filter(|&(s, _)| s != p) {
                        let at = if slot < p { slot } else { slot - 1 };
                        rest[at] = v;
                    }
                    avg += part[m[p]].get(&rest);
                }
                avg /= order as f64;
                assert!(
                    (full.get(m) - avg).abs() < 1e-12,
                    "mid-exempt avg mismatch, order {order} at {m:?}"
                );
            });
        }

        for_each_multiset(fx.dim, 6, |m| {
            let mut avg = 0.0;
            let mut rest = [0usize; 5];
            for p in 0..6 {
                for (slot, &v) in m.iter().enumerate().filter(|&(s, _)| s != p) {
                    let at = if slot < p { slot } else { slot - 1 };
                    rest[at] = v;
                }
                avg += d6pe[m[p]].get(&rest);
            }
            avg /= 6.0;
            assert!(
                (d6p.get(m) - avg).abs() < 1e-12,
                "triple-vertex exempt avg mismatch at {m:?}"
            );
        });
    }

    #[test]
    fn delta_products_match_brute_symmetrization() {
        let fx = fixture(3);
        let dd5 = ddelta5(&fx.d_dense);
        let raw = |idx: &[usize]| {
            if idx[0] == idx[1] {
                fx.d_dense.get(idx[2], idx[3], idx[4])
            } else {
                0.0
            }
        };
        for_each_multiset(fx.dim, 5, |m| {
            let want = full_sym_oracle(m, &raw);
            assert!((dd5.get(m) - want).abs() < 1e-12, "mismatch at {m:?}");
        });

        let dd4 = deltadelta4(fx.dim);
        assert!((dd4.get(&[0, 0, 1, 1]) - 1.0 / 3.0).abs() < 1e-15);
        assert!((dd4.get(&[0, 0, 0, 0]) - 1.0).abs() < 1e-15);
        assert!(dd4.get(&[0, 1, 2, 3]).abs() < 1e-15);

        // Folding the exempt slot back in must reproduce the order-5 product.
        let dd4le = ddelta4_last_exempt(&fx.d_dense);
        for_each_multiset(fx.dim, 5, |m| {
            let mut avg = 0.0;
            let mut rest = [0usize; 4];
            for p in 0..5 {
                for (slot, &v) in m.iter().enumerate().filter(|&(s, _)| s != p) {
                    let at = if slot < p { slot } else { slot - 1 };
                    rest[at] = v;
                }
                avg += dd4le[m[p]].get(&rest);
            }
            avg /= 5.0;
            assert!((dd5.get(m) - avg).abs() < 1e-12, "mismatch at {m:?}");
        });
    }

    #[test]
    fn chain_table_matches_direct_contraction() {
        let fx = fixture(3);
        let dd = dd_chain(&fx.d_dense, &fx.d_pairs);
        for (p, q, r, s) in [(0, 1, 2, 3), (7, 7, 7, 7), (0, 3, 5, 6), (2, 2, 4, 4)] {
            let mut want = 0.0;
            for y in 0..fx.dim {
                want += fx.d_dense.get(p, q, y) * fx.d_dense.get(y, r, s);
            }
            assert!((dd.get(p, q, r, s) - want).abs() < 1e-13);
        }
    }

    #[test]
    fn su2_family_vanishes_above_order_two() {
        let fx = fixture(2);
        assert!(fx.f_dense.get(0, 1, 2) != 0.0);
        for r in 3..=6 {
            assert_eq!(fx.d[&r].max_abs(), 0.0, "order {r} should vanish at n=2");
        }
    }
}
