//! The antisymmetric cocycle tensors of odd order 2m-1, built three ways:
//! from the defining f...fd contraction, by single-step recursion from the
//! next-lower order, and from traces of antisymmetrized matrix products.

use std::sync::Mutex;

use super::{Dense3, PairTable};
use crate::error::{Error, Result};
use crate::lambda::LambdaAlgebra;
use crate::par;
use crate::tensor::rank::{binomial, next_combination, unrank_ascending};
use crate::tensor::shuffle::shuffles;
use crate::tensor::{antisymmetrize, AntisymTensor, SymTensor, MAX_ORDER};
use num_complex::Complex64 as C64;

/// Innermost definition-route sum: contract the f-pair chain indices against
/// the order-m symmetric tensor, the last free index riding along.
fn def_inner(f_pairs: &PairTable, dm: &SymTensor, idx: &[usize]) -> f64 {
    let pairs = (idx.len() - 1) / 2;
    let k = idx[idx.len() - 1];
    let mut a = [0usize; 8];
    rec(f_pairs, dm, idx, 0, pairs, &mut a, k, 1.0)
}

fn rec(
    f_pairs: &PairTable,
    dm: &SymTensor,
    idx: &[usize],
    p: usize,
    pairs: usize,
    a: &mut [usize; 8],
    k: usize,
    w: f64,
) -> f64 {
    if p == pairs {
        a[pairs] = k;
        return w * dm.get(&a[..pairs + 1]);
    }
    let mut acc = 0.0;
    for &(t, v) in f_pairs.list(idx[2 * p], idx[2 * p + 1]) {
        a[p] = t as usize;
        acc += rec(f_pairs, dm, idx, p + 1, pairs, a, k, w * v);
    }
    acc
}

/// Definition route: antisymmetrize f^(m-1) d^(m) over all 2m-1 indices.
/// The m-1 f-blocks are interchangeable because d^(m) is symmetric.
pub fn omega_definition(m: usize, f_pairs: &PairTable, dm: &SymTensor) -> Result<AntisymTensor> {
    if m < 2 {
        return Err(Error::BadOrder("m >= 2", m));
    }
    if dm.order() != m {
        return Err(Error::ArityMismatch {
            expected: m,
            got: dm.order(),
        });
    }
    let dim = dm.dim();
    Ok(antisymmetrize(dim, 2 * m - 1, &[(2, m - 1), (1, 1)], |idx| {
        def_inner(f_pairs, dm, idx)
    }))
}

/// One definition-route component at an arbitrary index tuple. Used to spot
/// check orders whose full definition-route build is out of reach.
pub fn omega_definition_component(
    f_pairs: &PairTable,
    dm: &SymTensor,
    idx: &[usize],
) -> f64 {
    let m = dm.order();
    let q = 2 * m - 1;
    assert_eq!(idx.len(), q);
    let reps = shuffles(q, &[(2, m - 1), (1, 1)]);
    let mut arranged = [0usize; MAX_ORDER];
    let mut acc = 0.0;
    for rep in &reps {
        for (slot, &p) in rep.positions.iter().enumerate() {
            arranged[slot] = idx[p];
        }
        acc += rep.sign * def_inner(f_pairs, dm, &arranged[..q]);
    }
    acc / reps.len() as f64
}

/// Dense kernel `row(a, b, x)[t] = sum_u f_abu d_xut`, the contraction that
/// attaches one f-pair and one d-slot to the dangling index of the
/// next-lower cocycle.
pub struct PairKernel {
    dim: usize,
    v: Vec<f64>,
}

impl PairKernel {
    #[inline]
    pub fn row(&self, a: usize, b: usize, x: usize) -> &[f64] {
        let base = ((a * self.dim + b) * self.dim + x) * self.dim;
        &self.v[base..base + self.dim]
    }
}

pub fn pair_kernel(f_pairs: &PairTable, d_dense: &Dense3) -> PairKernel {
    let dim = d_dense.dim();
    let mut v = vec![0.0; dim * dim * dim * dim];
    for a in 0..dim {
        for b in 0..dim {
            let base = (a * dim + b) * dim * dim;
            for &(u, w) in f_pairs.list(a, b) {
                for x in 0..dim {
                    let row = &mut v[base + x * dim..base + x * dim + dim];
                    for (t, slot) in row.iter_mut().enumerate() {
                        *slot += w * d_dense.get(x, u as usize, t);
                    }
                }
            }
        }
    }
    PairKernel { dim, v }
}

struct Split {
    pos: [usize; 3],
    /// Sign of the block arrangement for each singleton choice; index c
    /// picks pos[2-c] as the singleton.
    signs: [f64; 3],
}

fn arrangement_sign(order: usize, chosen: &[usize; 3], single: usize) -> f64 {
    let mut seq: Vec<usize> = (0..order).filter(|p| !chosen.contains(p)).collect();
    for &p in chosen {
        if p != single {
            seq.push(p);
        }
    }
    seq.push(single);
    let mut inv = 0usize;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
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

fn build_splits(order: usize) -> Vec<Split> {
    let mut out = Vec::new();
    let mut pos = [0usize, 1, 2];
    loop {
        let signs = [
            arrangement_sign(order, &pos, pos[2]),
            arrangement_sign(order, &pos, pos[1]),
            arrangement_sign(order, &pos, pos[0]),
        ];
        out.push(Split { pos, signs });
        if !next_combination(&mut pos, order) {
            break;
        }
    }
    out
}

/// Recursion route: one step up from the cocycle of order q-2,
///
/// `out_{[A p q s]} = avg over cosets of sum_t prev_{t A} row(p, q, s)[t]`
///
/// with unit bracket weight over all q indices, blocks (q-3, 2, 1).
pub fn omega_recursive(
    prev: &AntisymTensor,
    f_pairs: &PairTable,
    d_dense: &Dense3,
) -> Result<AntisymTensor> {
    let dim = prev.dim();
    let q = prev.order() + 2;
    if prev.order() < 3 || prev.order() % 2 == 0 {
        return Err(Error::BadOrder("odd order >= 3", prev.order()));
    }
    if q > dim {
        return Ok(AntisymTensor::zero(dim, q));
    }
    let k4 = pair_kernel(f_pairs, d_dense);
    let splits = build_splits(q);
    let count = (q * (q - 1) * (q - 2) / 2) as f64;
    let a_len = q - 3;
    let total = binomial(dim, q) as usize;
    let prev_vals = prev.values();

    let values = par::fill_chunked(total, |start, chunk| {
        let mut t_buf = [0usize; MAX_ORDER];
        unrank_ascending(start, q, &mut t_buf[..q]);
        let mut a_vals = [0usize; MAX_ORDER];
        let mut prefix = [0u64; MAX_ORDER];
        let mut suffix = [0u64; MAX_ORDER];
        let mut v = vec![0.0f64; dim];
        for slot in chunk.iter_mut() {
            let t = &t_buf[..q];
            let mut acc = 0.0;
            for sp in &splits {
                let mut w = 0;
                for (p, &val) in t.iter().enumerate() {
                    if p != sp.pos[0] && p != sp.pos[1] && p != sp.pos[2] {
                        a_vals[w] = val;
                        w += 1;
                    }
                }
                prefix[0] = 0;
                for g in 1..=a_len {
                    prefix[g] = prefix[g - 1] + binomial(a_vals[g - 1], g);
                }
                suffix[a_len] = 0;
                for g in (0..a_len).rev() {
                    suffix[g] = suffix[g + 1] + binomial(a_vals[g], g + 2);
                }
                for g in 0..=a_len {
                    let lo = if g == 0 { 0 } else { a_vals[g - 1] + 1 };
                    let hi = if g == a_len { dim } else { a_vals[g] };
                    let sg = if g % 2 == 0 { 1.0 } else { -1.0 };
                    let base = prefix[g] + suffix[g];
                    for x in lo..hi {
                        v[x] = sg * prev_vals[(base + binomial(x, g + 1)) as usize];
                    }
                }
                for &av in &a_vals[..a_len] {
                    v[av] = 0.0;
                }
                let (p0, p1, p2) = (t[sp.pos[0]], t[sp.pos[1]], t[sp.pos[2]]);
                for (c, (pair, single)) in
                    [((p0, p1), p2), ((p0, p2), p1), ((p1, p2), p0)].into_iter().enumerate()
                {
                    let row = k4.row(pair.0, pair.1, single);
                    let mut dot = 0.0;
                    for (x, &vx) in v.iter().enumerate() {
                        dot += vx * row[x];
                    }
                    acc += sp.signs[c] * dot;
                }
            }
            *slot = acc / count;
            next_combination(&mut t_buf[..q], dim);
        }
    });
    Ok(AntisymTensor::from_values(dim, q, values))
}

/// Trace route: `2 i^(m-1) omega_{I k} = Tr(lambda_[I] lambda_k)` with I the
/// first 2m-2 indices. Returns the tensor and the largest imaginary residue
/// left after dividing out the phase, which the convention says must vanish.
pub fn omega_trace(m: usize, lam: &LambdaAlgebra) -> Result<(AntisymTensor, f64)> {
    if m < 2 {
        return Err(Error::BadOrder("m >= 2", m));
    }
    let dim = lam.dim();
    let q = 2 * m - 1;
    if q > dim {
        return Ok((AntisymTensor::zero(dim, q), 0.0));
    }
    let phase = match (m - 1) % 4 {
        0 => C64::new(2.0, 0.0),
        1 => C64::new(0.0, 2.0),
        2 => C64::new(-2.0, 0.0),
        _ => C64::new(0.0, -2.0),
    };
    let level = lam.antisym_level(q - 2);
    let total = binomial(dim, q) as usize;
    let head = q - 1;
    let imag_max = Mutex::new(0.0f64);

    let values = par::fill_chunked(total, |start, chunk| {
        let mut t_buf = [0usize; MAX_ORDER];
        unrank_ascending(start, q, &mut t_buf[..q]);
        let mut pre = [0u64; MAX_ORDER];
        let mut suf = [0u64; MAX_ORDER];
        let mut local_imag = 0.0f64;
        for slot in chunk.iter_mut() {
            let t = &t_buf[..q];
            pre[0] = 0;
            for g in 1..=head {
                pre[g] = pre[g - 1] + binomial(t[g - 1], g);
            }
            suf[head - 1] = 0;
            for g in (0..head - 1).rev() {
                suf[g] = suf[g + 1] + binomial(t[g + 1], g + 1);
            }
            let last = t[head];
            let mut tr = C64::new(0.0, 0.0);
            let mut sign = 1.0;
            for j in 0..head {
                let r = (pre[j] + suf[j]) as usize;
                tr += sign * lam.trace_mul_level(&level, r, last, t[j]);
                sign = -sign;
            }
            tr /= head as f64;
            let w = tr / phase;
            *slot = w.re;
            local_imag = local_imag.max(w.im.abs());
            next_combination(&mut t_buf[..q], dim);
        }
        let mut guard = imag_max.lock().unwrap();
        if *guard < local_imag {
            *guard = local_imag;
        }
    });
    let tensor = AntisymTensor::from_values(dim, q, values);
    let imag = *imag_max.lock().unwrap();
    Ok((tensor, imag))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::SuBasis;
    use crate::invariants::{d_family, InvariantSet};
    use crate::tensor::{full_contract, Tensor};
    use std::sync::Arc;

    fn heap_antisym(idx: &[usize], g: &dyn Fn(&[usize]) -> f64) -> f64 {
        let mut buf = idx.to_vec();
        let k = buf.len();
        let mut c = vec![0usize; k];
        let mut total = g(&buf);
        let mut count = 1usize;
        let mut sign = 1.0;
        let mut i = 1;
        while i < k {
            if c[i] < i {
                if i % 2 == 0 {
                    buf.swap(0, i);
                } else {
                    buf.swap(c[i], i);
                }
                sign = -sign;
                total += sign * g(&buf);
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
    fn definition_matches_full_permutation_sum_at_n3() {
        let set = InvariantSet::base(3).unwrap();
        let omega5 = omega_definition(3, set.f_pairs(), set.d(3).unwrap()).unwrap();
        let fp = set.f_pairs();
        let dd = set.d_dense();
        let raw = |idx: &[usize]| {
            let mut acc = 0.0;
            for &(a, va) in fp.list(idx[0], idx[1]) {
                for &(b, vb) in fp.list(idx[2], idx[3]) {
                    acc += va * vb * dd.get(a as usize, b as usize, idx[4]);
                }
            }
            acc
        };
        omega5.for_each(|idx, got| {
            let want = heap_antisym(idx, &raw);
            assert!((got - want).abs() < 1e-12, "mismatch at {idx:?}");
        });
        let sq = full_contract(&Tensor::Antisym(omega5.clone()), &Tensor::Antisym(omega5));
        assert!((sq.unwrap() - 40.0).abs() < 1e-9);
    }

    #[test]
    fn pointwise_definition_agrees_with_full_build() {
        let set = InvariantSet::base(3).unwrap();
        let omega5 = omega_definition(3, set.f_pairs(), set.d(3).unwrap()).unwrap();
        omega5.for_each(|idx, want| {
            let got = omega_definition_component(set.f_pairs(), set.d(3).unwrap(), idx);
            assert!((got - want).abs() < 1e-13);
        });
    }

    #[test]
    fn pair_kernel_matches_direct_sum() {
        let set = InvariantSet::base(3).unwrap();
        let k4 = pair_kernel(set.f_pairs(), set.d_dense());
        let fd = set.f_dense();
        let dd = set.d_dense();
        for (a, b, x, t) in [(0, 1, 7, 2), (3, 6, 0, 0), (2, 5, 4, 1), (1, 1, 3, 3)] {
            let mut want = 0.0;
            for u in 0..8 {
                want += fd.get(a, b, u) * dd.get(x, u, t);
            }
            assert!((k4.row(a, b, x)[t] - want).abs() < 1e-13);
        }
    }

    #[test]
    fn recursion_reproduces_definition_route() {
        for n in [3usize, 4] {
            let set = InvariantSet::base(n).unwrap();
            let omega5 = omega_definition(3, set.f_pairs(), set.d(3).unwrap()).unwrap();
            let omega7_def = omega_definition(4, set.f_pairs(), set.d(4).unwrap()).unwrap();
            let omega7_rec = omega_recursive(&omega5, set.f_pairs(), set.d_dense()).unwrap();
            let diff = omega7_def.max_abs_diff(&omega7_rec);
            assert!(diff < 1e-12, "n={n} recursion mismatch {diff}");
        }
    }

    #[test]
    fn zero_object_above_dimension() {
        let set = InvariantSet::base(2).unwrap();
        let d = d_family(set.d3(), set.d_pairs(), 3);
        let omega5 = omega_definition(3, set.f_pairs(), &d[&3]).unwrap();
        assert_eq!(omega5.values().len(), 0);
        let omega7 = omega_recursive(&omega5, set.f_pairs(), set.d_dense()).unwrap();
        assert_eq!(omega7.values().len(), 0);
    }

    #[test]
    fn trace_route_agrees_with_definition() {
        let basis = Arc::new(SuBasis::new(3).unwrap());
        let set = InvariantSet::base(3).unwrap();
        let lam = LambdaAlgebra::new(basis);

        let (om3, imag3) = omega_trace(2, &lam).unwrap();
        assert!(imag3 < 1e-12);
        assert!(om3.max_abs_diff(set.f()) < 1e-12);

        let om5_def = omega_definition(3, set.f_pairs(), set.d(3).unwrap()).unwrap();
        let (om5_tr, imag5) = omega_trace(3, &lam).unwrap();
        assert!(imag5 < 1e-12);
        assert!(om5_tr.max_abs_diff(&om5_def) < 1e-12);
    }
}
