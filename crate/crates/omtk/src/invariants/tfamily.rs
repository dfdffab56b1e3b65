//! Symmetric t-tensors: ordered contractions of a cocycle tensor with
//! structure-constant pairs, one pair per output index.
//!
//! `t(m)_{a_1 .. a_{m-1} s} = W_{i_1 j_1 .. i_{m-1} j_{m-1} s}
//! f_{i_1 j_1 a_1} .. f_{i_{m-1} j_{m-1} a_{m-1}}` where W is the
//! order-(2m-1) cocycle. Skewsymmetry of W makes the result fully
//! symmetric, and already makes each partial contraction symmetric in the
//! indices emitted so far, so partial layers key their output indices by
//! multiset rank.

use rayon::prelude::*;

use super::PairTable;
use crate::error::{Error, Result};
use crate::tensor::rank::{
    antisym_len, binomial, rank_multiset, sym_len, unrank_ascending, unrank_multiset,
};
use crate::tensor::{AntisymTensor, SymTensor, MAX_ORDER};

/// One stage of the pair-fold: `rows[r][a]` holds the contraction of the
/// cocycle with `a_order` f-pairs, where r ranks the remaining antisymmetric
/// indices and a ranks the multiset of emitted indices.
pub struct FoldLayer {
    dim: usize,
    a_order: usize,
    r_order: usize,
    a_count: usize,
    r_count: usize,
    rows: Vec<f64>,
}

impl FoldLayer {
    /// Layer zero: the cocycle itself, no pairs folded yet.
    pub fn seed(omega: &AntisymTensor) -> Self {
        Self {
            dim: omega.dim(),
            a_order: 0,
            r_order: omega.order(),
            a_count: 1,
            r_count: omega.len(),
            rows: omega.values().to_vec(),
        }
    }

    pub fn a_order(&self) -> usize {
        self.a_order
    }

    pub fn r_order(&self) -> usize {
        self.r_order
    }

    pub fn row(&self, r: usize) -> &[f64] {
        &self.rows[r * self.a_count..(r + 1) * self.a_count]
    }
}

/// Fold one f-pair into the layer: contract two of the remaining
/// antisymmetric slots with f and emit one symmetric index.
///
/// For a canonical remainder R and a pair i < j drawn from its complement,
/// the parent tuple is sort(R + {i,j}) and the sign is (-1)^(g_i + g_j)
/// with g the number of R entries below the inserted element. Ordered pairs
/// double the unordered sum since both factors are antisymmetric.
pub fn fold_f_pair(prev: &FoldLayer, f_pairs: &PairTable) -> FoldLayer {
    assert!(prev.r_order >= 3, "need at least one spare antisym index");
    let dim = prev.dim;
    let r_order = prev.r_order - 2;
    let a_order = prev.a_order + 1;
    let r_count = antisym_len(dim, r_order);
    let a_count = sym_len(dim, a_order);

    // Multiset rank after appending one index to an emitted prefix.
    let mut insert = vec![0u32; prev.a_count * dim];
    {
        let mut prefix = vec![0usize; prev.a_order];
        let mut grown = vec![0usize; a_order];
        for ap in 0..prev.a_count {
            unrank_multiset(ap, prev.a_order, &mut prefix);
            for (b, slot) in insert[ap * dim..(ap + 1) * dim].iter_mut().enumerate() {
                grown[..prev.a_order].copy_from_slice(&prefix);
                grown[prev.a_order] = b;
                grown.sort_unstable();
                *slot = rank_multiset(&grown) as u32;
            }
        }
    }

    let mut rows = vec![0.0; r_count * a_count];
    if prev.r_count == 0 || r_count == 0 {
        return FoldLayer {
            dim,
            a_order,
            r_order,
            a_count,
            r_count,
            rows,
        };
    }

    rows.par_chunks_mut(a_count)
        .enumerate()
        .with_min_len(64)
        .for_each(|(r, out_row)| {
            let mut rem = [0usize; MAX_ORDER];
            unrank_ascending(r, r_order, &mut rem[..r_order]);
            let rem = &rem[..r_order];

            // Prefix/suffix rank pieces for double insertion: an entry of R
            // at slot t contributes C(R_t, t+1) before the first gap,
            // C(R_t, t+2) between the gaps and C(R_t, t+3) after the second.
            let mut p0 = [0usize; MAX_ORDER];
            let mut p1 = [0usize; MAX_ORDER];
            let mut s2 = [0usize; MAX_ORDER + 1];
            for t in 0..r_order {
                p0[t + 1] = p0[t] + binomial(rem[t], t + 1) as usize;
                p1[t + 1] = p1[t] + binomial(rem[t], t + 2) as usize;
            }
            for t in (0..r_order).rev() {
                s2[t] = s2[t + 1] + binomial(rem[t], t + 3) as usize;
            }

            let mut comp = [0usize; MAX_ORDER * MAX_ORDER];
            let mut gap = [0usize; MAX_ORDER * MAX_ORDER];
            let mut len = 0usize;
            let mut at = 0usize;
            for v in 0..dim {
                if at < r_order && rem[at] == v {
                    at += 1;
                } else {
                    comp[len] = v;
                    gap[len] = at;
                    len += 1;
                }
            }

            for ci in 0..len {
                let (i, gi) = (comp[ci], gap[ci]);
                let head = p0[gi] as i64 + binomial(i, gi + 1) as i64 - p1[gi] as i64;
                for cj in ci + 1..len {
                    let (j, gj) = (comp[cj], gap[cj]);
                    let flist = f_pairs.list(i, j);
                    if flist.is_empty() {
                        continue;
                    }
                    let parent = (head
                        + p1[gj] as i64
                        + binomial(j, gj + 2) as i64
                        + s2[gj] as i64) as usize;
                    let sign = if (gi + gj) & 1 == 0 { 2.0 } else { -2.0 };
                    let prev_row = prev.row(parent);
                    for &(b, fv) in flist {
                        let w = sign * fv;
                        let tab = &insert[..];
                        for (ap, &pv) in prev_row.iter().enumerate() {
                            if pv != 0.0 {
                                out_row[tab[ap * dim + b as usize] as usize] += w * pv;
                            }
                        }
                    }
                }
            }
        });

    FoldLayer {
        dim,
        a_order,
        r_order,
        a_count,
        r_count,
        rows,
    }
}

/// Full t-tensor of order m from the order-(2m-1) cocycle: fold m-1 f-pairs,
/// then read the surviving antisymmetric slot as the last symmetric index.
pub fn t_tensor(omega: &AntisymTensor, f_pairs: &PairTable) -> Result<SymTensor> {
    let q = omega.order();
    if q < 3 || q % 2 == 0 {
        return Err(Error::BadOrder("odd cocycle order >= 3", q));
    }
    let dim = omega.dim();
    let m = (q + 1) / 2;
    let mut layer = FoldLayer::seed(omega);
    for _ in 0..m - 1 {
        layer = fold_f_pair(&layer, f_pairs);
    }
    debug_assert_eq!(layer.r_order, 1);

    let mut out = SymTensor::zero(dim, m);
    if layer.r_count == 0 {
        return Ok(out);
    }
    let mut idx = vec![0usize; m];
    for rank in 0..out.len() {
        unrank_multiset(rank, m, &mut idx);
        let v = layer.row(idx[m - 1])[rank_multiset(&idx[..m - 1])];
        out.values_mut()[rank] = v;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::SuBasis;
    use crate::invariants::{d_family, d_last_exempt_family, omega_definition, Dense3, PairTable};
    use crate::tensor::rank::next_multiset;

    struct Fix {
        dim: usize,
        n: usize,
        f_dense: Dense3,
        f_pairs: PairTable,
        d3: SymTensor,
        f: AntisymTensor,
    }

    fn fixture(n: usize) -> Fix {
        let basis = SuBasis::new(n).unwrap();
        let (f, d3) = basis.structure_constants();
        let f_dense = Dense3::from_antisym(&f);
        let f_pairs = PairTable::new(&f_dense);
        Fix {
            dim: basis.dim(),
            n,
            f_dense,
            f_pairs,
            d3,
            f,
        }
    }

    fn omega5(fx: &Fix) -> AntisymTensor {
        let d_dense = Dense3::from_sym(&fx.d3);
        let d_pairs = PairTable::new(&d_dense);
        let le = d_last_exempt_family(&d_dense, &d_pairs, 3);
        let d = d_family(&fx.d3, &le, 3);
        omega_definition(3, &fx.f_pairs, &d[&3]).unwrap()
    }

    #[test]
    fn order_two_is_n_times_delta() {
        for n in [2usize, 3, 4] {
            let fx = fixture(n);
            let t2 = t_tensor(&fx.f, &fx.f_pairs).unwrap();
            for a in 0..fx.dim {
                for b in a..fx.dim {
                    let want = if a == b { n as f64 } else { 0.0 };
                    assert!(
                        (t2.get(&[a, b]) - want).abs() < 1e-12,
                        "n={n} at ({a},{b})"
                    );
                }
            }
        }
    }

    #[test]
    fn order_three_matches_scaled_d() {
        let fx = fixture(3);
        let w5 = omega5(&fx);
        let t3 = t_tensor(&w5, &fx.f_pairs).unwrap();
        let scale = (fx.n * fx.n) as f64 / 3.0;
        let mut m = [0usize; 3];
        loop {
            let want = scale * fx.d3.get(&m);
            assert!((t3.get(&m) - want).abs() < 1e-11, "mismatch at {m:?}");
            if !next_multiset(&mut m, fx.dim) {
                break;
            }
        }
    }

    #[test]
    fn order_three_matches_scatter_oracle() {
        let fx = fixture(3);
        let w5 = omega5(&fx);
        let dim = fx.dim;
        // Raw ordered sum over all five slots, permutations scattered from
        // the canonical store.
        let mut want = vec![0.0; dim * dim * dim];
        let mut perm = [0usize; 5];
        w5.for_each(|idx, v| {
            let mut c = [0usize; 5];
            perm.copy_from_slice(idx);
            let mut sign = 1.0;
            let mut emit = |p: &[usize; 5], s: f64| {
                for a in 0..dim {
                    let fa = fx.f_dense.get(p[0], p[1], a);
                    if fa == 0.0 {
                        continue;
                    }
                    for b in 0..dim {
                        let fb = fx.f_dense.get(p[2], p[3], b);
                        if fb != 0.0 {
                            want[(a * dim + b) * dim + p[4]] += s * v * fa * fb;
                        }
                    }
                }
            };
            emit(&perm, sign);
            let mut i = 1;
            while i < 5 {
                if c[i] < i {
                    if i % 2 == 0 {
                        perm.swap(0, i);
                    } else {
                        perm.swap(c[i], i);
                    }
                    sign = -sign;
                    emit(&perm, sign);
                    c[i] += 1;
                    i = 1;
                } else {
                    c[i] = 0;
                    i += 1;
                }
            }
        });
        let t3 = t_tensor(&w5, &fx.f_pairs).unwrap();
        for a in 0..dim {
            for b in 0..dim {
                for s in 0..dim {
                    let mut m = [a, b, s];
                    m.sort_unstable();
                    assert!(
                        (t3.get(&m) - want[(a * dim + b) * dim + s]).abs() < 1e-11,
                        "mismatch at ({a},{b},{s})"
                    );
                }
            }
        }
    }

    #[test]
    fn layer_rows_are_representative_independent() {
        let fx = fixture(3);
        let w5 = omega5(&fx);
        let l1 = fold_f_pair(&FoldLayer::seed(&w5), &fx.f_pairs);
        let l2 = fold_f_pair(&l1, &fx.f_pairs);
        assert_eq!(l2.r_order(), 1);
        // rows[s][{a,b}] must agree with rows[a][{b,s}]: any index may play
        // the surviving antisymmetric slot.
        for s in 0..fx.dim {
            for a in 0..fx.dim {
                for b in a..fx.dim {
                    let lhs = l2.row(s)[rank_multiset(&[a, b])];
                    let mut other = [b, s];
                    other.sort_unstable();
                    let rhs = l2.row(a)[rank_multiset(&other)];
                    assert!((lhs - rhs).abs() < 1e-12, "({a},{b},{s})");
                }
            }
        }
    }

    #[test]
    fn vanishes_when_cocycle_is_empty() {
        let fx = fixture(2);
        let w5 = AntisymTensor::zero(fx.dim, 5);
        let t3 = t_tensor(&w5, &fx.f_pairs).unwrap();
        assert_eq!(t3.max_abs(), 0.0);
    }

    #[test]
    fn rejects_even_order() {
        let fx = fixture(2);
        let w = AntisymTensor::zero(fx.dim, 4);
        assert!(t_tensor(&w, &fx.f_pairs).is_err());
    }
}
