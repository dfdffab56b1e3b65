//! Antisymmetrized and symmetrized products of the basis matrices, stored
//! level by level over canonical index tuples, plus the trace helpers the
//! identity checks build on.

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

use num_complex::Complex64 as C64;
use rayon::prelude::*;

use crate::basis::SuBasis;
use crate::matrix::CMatrix;
use crate::par;
use crate::tensor::rank::{
    binomial, next_combination, next_multiset, rank_multiset, sym_len, unrank_ascending,
    unrank_multiset,
};
use crate::tensor::MAX_ORDER;

/// Generator in coordinate form; every su(n) basis matrix has at most n
/// nonzero entries.
#[derive(Debug, Clone)]
pub struct SparseMat {
    entries: Vec<(u8, u8, C64)>,
}

impl SparseMat {
    fn from_dense(m: &CMatrix) -> Self {
        let n = m.n();
        let mut entries = Vec::new();
        for r in 0..n {
            for c in 0..n {
                let v = m.get(r, c);
                if v.norm_sqr() != 0.0 {
                    entries.push((r as u8, c as u8, v));
                }
            }
        }
        Self { entries }
    }

    /// out += coef * (self * b), all matrices n x n row-major.
    #[inline]
    fn mul_add(&self, b: &[C64], coef: f64, out: &mut [C64], n: usize) {
        for &(r, c, v) in &self.entries {
            let w = v * coef;
            let src = &b[c as usize * n..c as usize * n + n];
            let dst = &mut out[r as usize * n..r as usize * n + n];
            for (d, s) in dst.iter_mut().zip(src) {
                *d += w * s;
            }
        }
    }
}

/// A level of product matrices stored flat, one n x n block per canonical
/// index tuple.
pub struct MatLevel {
    n: usize,
    data: Vec<C64>,
}

impl MatLevel {
    #[inline]
    pub fn mat(&self, r: usize) -> &[C64] {
        let nn = self.n * self.n;
        &self.data[r * nn..(r + 1) * nn]
    }

    pub fn count(&self) -> usize {
        self.data.len() / (self.n * self.n)
    }

    pub fn n(&self) -> usize {
        self.n
    }
}

/// Tr(a * b) without forming the product.
#[inline]
pub fn trace_mul_slices(a: &[C64], b: &[C64], n: usize) -> C64 {
    let mut tr = C64::new(0.0, 0.0);
    for r in 0..n {
        let row = &a[r * n..r * n + n];
        for (c, &av) in row.iter().enumerate() {
            tr += av * b[c * n + r];
        }
    }
    tr
}

pub struct LambdaAlgebra {
    basis: Arc<SuBasis>,
    n: usize,
    dim: usize,
    sparse: Vec<SparseMat>,
    /// Flat dim x dim table of two-generator products.
    pair_data: Vec<C64>,
    levels: Mutex<BTreeMap<usize, Arc<MatLevel>>>,
    sym_levels: Mutex<BTreeMap<usize, Arc<MatLevel>>>,
}

impl LambdaAlgebra {
    pub fn new(basis: Arc<SuBasis>) -> Self {
        let n = basis.n();
        let dim = basis.dim();
        let nn = n * n;
        let sparse: Vec<SparseMat> = (0..dim)
            .map(|i| SparseMat::from_dense(basis.matrix(i)))
            .collect();
        let mut pair_data = vec![C64::new(0.0, 0.0); dim * dim * nn];
        for a in 0..dim {
            for b in 0..dim {
                let dst = &mut pair_data[(a * dim + b) * nn..(a * dim + b + 1) * nn];
                sparse[a].mul_add(basis.matrix(b).data(), 1.0, dst, n);
            }
        }
        Self {
            basis,
            n,
            dim,
            sparse,
            pair_data,
            levels: Mutex::new(BTreeMap::new()),
            sym_levels: Mutex::new(BTreeMap::new()),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis(&self) -> &Arc<SuBasis> {
        &self.basis
    }

    /// lambda_a * lambda_b as a flat slice.
    #[inline]
    pub fn pair(&self, a: usize, b: usize) -> &[C64] {
        let nn = self.n * self.n;
        &self.pair_data[(a * self.dim + b) * nn..(a * self.dim + b + 1) * nn]
    }

    /// Tr(level[r] * lambda_a * lambda_b).
    #[inline]
    pub fn trace_mul_level(&self, level: &MatLevel, r: usize, a: usize, b: usize) -> C64 {
        trace_mul_slices(level.mat(r), self.pair(a, b), self.n)
    }

    /// Antisymmetrized product level: one matrix per ascending s-tuple,
    /// built by the front-expansion recursion from level s-1.
    pub fn antisym_level(&self, s: usize) -> Arc<MatLevel> {
        assert!(s >= 1 && s <= self.dim);
        if let Some(l) = self.levels.lock().unwrap().get(&s) {
            return l.clone();
        }
        let level = if s == 1 {
            let nn = self.n * self.n;
            let mut data = vec![C64::new(0.0, 0.0); self.dim * nn];
            for i in 0..self.dim {
                data[i * nn..(i + 1) * nn].copy_from_slice(self.basis.matrix(i).data());
            }
            Arc::new(MatLevel { n: self.n, data })
        } else {
            let prev = self.antisym_level(s - 1);
            Arc::new(self.build_antisym(s, &prev))
        };
        self.levels
            .lock()
            .unwrap()
            .entry(s)
            .or_insert(level)
            .clone()
    }

    fn build_antisym(&self, s: usize, prev: &MatLevel) -> MatLevel {
        let n = self.n;
        let nn = n * n;
        let dim = self.dim;
        let count = binomial(dim, s) as usize;
        let mut data = vec![C64::new(0.0, 0.0); count * nn];
        let weight = 1.0 / s as f64;
        data.par_chunks_mut(par::CHUNK * nn)
            .enumerate()
            .for_each(|(ci, chunk)| {
                let start = ci * par::CHUNK;
                let mut t_buf = [0usize; MAX_ORDER];
                unrank_ascending(start, s, &mut t_buf[..s]);
                let mut pre = [0u64; MAX_ORDER];
                let mut suf = [0u64; MAX_ORDER];
                for out in chunk.chunks_mut(nn) {
                    let t = &t_buf[..s];
                    pre[0] = 0;
                    for g in 1..=s {
                        pre[g] = pre[g - 1] + binomial(t[g - 1], g);
                    }
                    suf[s - 1] = 0;
                    for g in (0..s - 1).rev() {
                        suf[g] = suf[g + 1] + binomial(t[g + 1], g + 1);
                    }
                    let mut w = weight;
                    for j in 0..s {
                        let r = (pre[j] + suf[j]) as usize;
                        self.sparse[t[j]].mul_add(prev.mat(r), w, out, n);
                        w = -w;
                    }
                    next_combination(&mut t_buf[..s], dim);
                }
            });
        MatLevel { n, data }
    }

    /// Symmetrized product level over ascending multisets.
    pub fn sym_level(&self, s: usize) -> Arc<MatLevel> {
        assert!(s >= 1);
        if let Some(l) = self.sym_levels.lock().unwrap().get(&s) {
            return l.clone();
        }
        let level = if s == 1 {
            self.antisym_level(1)
        } else {
            let prev = self.sym_level(s - 1);
            Arc::new(self.build_sym(s, &prev))
        };
        self.sym_levels
            .lock()
            .unwrap()
            .entry(s)
            .or_insert(level)
            .clone()
    }

    fn build_sym(&self, s: usize, prev: &MatLevel) -> MatLevel {
        let n = self.n;
        let nn = n * n;
        let dim = self.dim;
        let count = sym_len(dim, s);
        let mut data = vec![C64::new(0.0, 0.0); count * nn];
        let weight = 1.0 / s as f64;
        data.par_chunks_mut(par::CHUNK * nn)
            .enumerate()
            .for_each(|(ci, chunk)| {
                let start = ci * par::CHUNK;
                let mut t_buf = [0usize; MAX_ORDER];
                unrank_multiset(start, s, &mut t_buf[..s]);
                let mut rest = [0usize; MAX_ORDER];
                for out in chunk.chunks_mut(nn) {
                    let t = &t_buf[..s];
                    for j in 0..s {
                        for (slot, &v) in t.iter().enumerate().filter(|&(p, _)| p != j) {
                            let at = if slot < j { slot } else { slot - 1 };
                            rest[at] = v;
                        }
                        let r = rank_multiset(&rest[..s - 1]);
                        self.sparse[t[j]].mul_add(prev.mat(r), weight, out, n);
                    }
                    next_multiset(&mut t_buf[..s], dim);
                }
            });
        MatLevel { n, data }
    }

    /// Evict a cached antisymmetrized level (big transient levels).
    pub fn drop_level(&self, s: usize) {
        self.levels.lock().unwrap().remove(&s);
    }

    /// sum_i lambda_i M lambda_i.
    pub fn sandwich(&self, m: &CMatrix) -> CMatrix {
        let n = self.n;
        let nn = n * n;
        let mut mid = vec![C64::new(0.0, 0.0); nn];
        let mut out = CMatrix::zero(n);
        for i in 0..self.dim {
            mid.iter_mut().for_each(|z| *z = C64::new(0.0, 0.0));
            self.sparse[i].mul_add(m.data(), 1.0, &mut mid, n);
            // (mid * lambda_i) accumulated: out += mid * sparse_i, done as
            // out^T += sparse_i^T * mid^T; cheaper to add entrywise here.
            for &(r, c, v) in &self.sparse[i].entries {
                for row in 0..n {
                    let x = mid[row * n + r as usize] * v;
                    out.addc(row, c as usize, x);
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_antisym(basis: &SuBasis, idx: &[usize]) -> CMatrix {
        let n = basis.n();
        let k = idx.len();
        let mut buf = idx.to_vec();
        let mut c = vec![0usize; k];
        let product = |ord: &[usize]| {
            let mut m = basis.matrix(ord[0]).clone();
            for &i in &ord[1..] {
                m = m.mul(basis.matrix(i));
            }
            m
        };
        let mut total = product(&buf);
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
                let p = product(&buf);
                for r in 0..n {
                    for cc in 0..n {
                        total.addc(r, cc, p.get(r, cc) * sign);
                    }
                }
                count += 1;
                c[i] += 1;
                i = 1;
            } else {
                c[i] = 0;
                i += 1;
            }
        }
        total.scale(1.0 / count as f64);
        total
    }

    fn mat_diff(a: &[C64], b: &CMatrix, n: usize) -> f64 {
        let mut m = 0.0f64;
        for r in 0..n {
            for c in 0..n {
                m = m.max((a[r * n + c] - b.get(r, c)).norm());
            }
        }
        m
    }

    #[test]
    fn antisym_levels_match_permutation_sums() {
        let basis = Arc::new(SuBasis::new(3).unwrap());
        let lam = LambdaAlgebra::new(basis.clone());
        for s in 2..=4 {
            let level = lam.antisym_level(s);
            let mut t = vec![0usize; s];
            for i in 0..s {
                t[i] = i;
            }
            let mut r = 0usize;
            loop {
                let want = brute_antisym(&basis, &t);
                assert!(
                    mat_diff(level.mat(r), &want, 3) < 1e-13,
                    "level {s} tuple {t:?}"
                );
                r += 1;
                if !next_combination(&mut t, 8) {
                    break;
                }
            }
            assert_eq!(r, level.count());
        }
    }

    #[test]
    fn sym_level_matches_permutation_sum() {
        let basis = Arc::new(SuBasis::new(2).unwrap());
        let lam = LambdaAlgebra::new(basis.clone());
        let level = lam.sym_level(3);
        // Pauli algebra: sigma_(i i j) should symmetrize cleanly.
        let mut t = [0usize; 3];
        let mut r = 0usize;
        loop {
            // Unit-weight symmetrization via permutation sum with signs off.
            let mut want = CMatrix::zero(2);
            let perms = [
                [t[0], t[1], t[2]],
                [t[0], t[2], t[1]],
                [t[1], t[0], t[2]],
                [t[1], t[2], t[0]],
                [t[2], t[0], t[1]],
                [t[2], t[1], t[0]],
            ];
            for p in perms {
                let m = basis.matrix(p[0]).mul(basis.matrix(p[1])).mul(basis.matrix(p[2]));
                for rr in 0..2 {
                    for cc in 0..2 {
                        want.addc(rr, cc, m.get(rr, cc));
                    }
                }
            }
            want.scale(1.0 / 6.0);
            assert!(mat_diff(level.mat(r), &want, 2) < 1e-14, "tuple {t:?}");
            r += 1;
            if !next_multiset(&mut t, 3) {
                break;
            }
        }
        assert_eq!(r, level.count());
    }

    #[test]
    fn pair_products_and_casimir() {
        let basis = Arc::new(SuBasis::new(3).unwrap());
        let lam = LambdaAlgebra::new(basis.clone());
        for a in 0..8 {
            for b in 0..8 {
                let want = basis.matrix(a).mul(basis.matrix(b));
                assert!(mat_diff(lam.pair(a, b), &want, 3) < 1e-14);
            }
        }
        // sum_i lambda_i lambda_i = 2(n^2-1)/n * I
        let id = CMatrix::identity(3);
        let cas = lam.sandwich(&id);
        let c = 2.0 * 8.0 / 3.0;
        for r in 0..3 {
            for cc in 0..3 {
                let want = if r == cc { C64::new(c, 0.0) } else { C64::new(0.0, 0.0) };
                assert!((cas.get(r, cc) - want).norm() < 1e-13);
            }
        }
    }

    #[test]
    fn front_expansion_identity_holds() {
        // lambda_[12] = i f_12k lambda_k at n=3 pins the sign convention.
        let basis = Arc::new(SuBasis::new(3).unwrap());
        let lam = LambdaAlgebra::new(basis.clone());
        let level2 = lam.antisym_level(2);
        // tuple (0,1) has rank 0; f_123 = 1, so lambda_[12] = i lambda_3.
        let want = basis.matrix(2);
        let got = level2.mat(0);
        for r in 0..3 {
            for c in 0..3 {
                let lhs = got[r * 3 + c];
                let rhs = C64::new(0.0, 1.0) * want.get(r, c);
                assert!((lhs - rhs).norm() < 1e-14);
            }
        }
    }
}
