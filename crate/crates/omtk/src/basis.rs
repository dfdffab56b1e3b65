//! Generalized Gell-Mann generators of su(n) and their structure constants.
//!
//! Generator ordering: for each k = 2..=n, the off-diagonal pairs (j, k) for
//! j < k contribute the symmetric matrix S_jk followed by the antisymmetric
//! A_jk, and the block closes with the diagonal D_{k-1}. For n = 2 this is
//! the Pauli triple; for n = 3 it reproduces the conventional ordering of
//! the eight Gell-Mann matrices (indices 3 and 8 diagonal).

use crate::error::{Error, Result};
use crate::matrix::{C64, CMatrix};
use crate::tensor::{rank, AntisymTensor, SymTensor};

#[derive(Debug, Clone)]
pub struct SuBasis {
    n: usize,
    dim: usize,
    matrices: Vec<CMatrix>,
}

impl SuBasis {
    /// Build the n^2 - 1 generators, normalized to `Tr(l_i l_j) = 2 delta_ij`.
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidRank(n));
        }
        let mut matrices = Vec::with_capacity(n * n - 1);
        for k in 1..n {
            for j in 0..k {
                let mut s = CMatrix::zero(n);
                s.set(j, k, C64::new(1.0, 0.0));
                s.set(k, j, C64::new(1.0, 0.0));
                matrices.push(s);
                let mut a = CMatrix::zero(n);
                a.set(j, k, C64::new(0.0, -1.0));
                a.set(k, j, C64::new(0.0, 1.0));
                matrices.push(a);
            }
            let m = k as f64;
            let norm = (2.0 / (m * (m + 1.0))).sqrt();
            let mut d = CMatrix::zero(n);
            for i in 0..k {
                d.set(i, i, C64::new(norm, 0.0));
            }
            d.set(k, k, C64::new(-m * norm, 0.0));
            matrices.push(d);
        }
        Ok(Self {
            n,
            dim: n * n - 1,
            matrices,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Adjoint dimension n^2 - 1.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self, i: usize) -> &CMatrix {
        &self.matrices[i]
    }

    pub fn matrices(&self) -> &[CMatrix] {
        &self.matrices
    }

    /// Structure constants: totally antisymmetric `f` and totally symmetric
    /// `d`, from `Tr(l_i l_j l_k) = 2 (d_ijk + i f_ijk)`.
    pub fn structure_constants(&self) -> (AntisymTensor, SymTensor) {
        let d3 = self.dim;
        let mut f = AntisymTensor::zero(d3, 3);
        let mut tuple = [0usize; 3];
        let mut prod = CMatrix::zero(self.n);
        for r in 0..f.len() {
            rank::unrank_ascending(r, 3, &mut tuple);
            self.matrices[tuple[0]].mul_into(&self.matrices[tuple[1]], &mut prod);
            let t = prod.trace_mul(&self.matrices[tuple[2]]);
            f.values_mut()[r] = t.im / 2.0;
        }
        let mut d = SymTensor::zero(d3, 3);
        let mut m = [0usize; 3];
        for r in 0..d.len() {
            rank::unrank_multiset(r, 3, &mut m);
            self.matrices[m[0]].mul_into(&self.matrices[m[1]], &mut prod);
            let t = prod.trace_mul(&self.matrices[m[2]]);
            d.values_mut()[r] = t.re / 2.0;
        }
        (f, d)
    }

    /// Largest deviation of `Tr(l_i l_j)` from `2 delta_ij`, and of any
    /// generator from hermiticity/tracelessness.
    pub fn orthonormality_residual(&self) -> f64 {
        let mut worst = 0.0f64;
        for (i, a) in self.matrices.iter().enumerate() {
            worst = worst.max(a.trace().norm());
            worst = worst.max(a.max_abs_diff(&a.dagger()));
            for (j, b) in self.matrices.iter().enumerate() {
                let t = a.trace_mul(b);
                let expect = if i == j { 2.0 } else { 0.0 };
                worst = worst.max((t - C64::new(expect, 0.0)).norm());
            }
        }
        worst
    }

    /// Largest deviation of the completeness sum
    /// `sum_i (l_i)_ab (l_i)_cd - 2 delta_ad delta_cb + (2/n) delta_ab delta_cd`.
    pub fn completeness_residual(&self) -> f64 {
        let n = self.n;
        let mut worst = 0.0f64;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        let mut acc = C64::new(0.0, 0.0);
                        for m in &self.matrices {
                            acc += m.get(a, b) * m.get(c, d);
                        }
                        let mut expect = 0.0;
                        if a == d && c == b {
                            expect += 2.0;
                        }
                        if a == b && c == d {
                            expect -= 2.0 / n as f64;
                        }
                        worst = worst.max((acc - C64::new(expect, 0.0)).norm());
                    }
                }
            }
        }
        worst
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pauli_matrices_at_n2() {
        let b = SuBasis::new(2).unwrap();
        assert_eq!(b.dim(), 3);
        let s1 = b.matrix(0);
        let s2 = b.matrix(1);
        let s3 = b.matrix(2);
        assert_eq!(s1.get(0, 1), C64::new(1.0, 0.0));
        assert_eq!(s2.get(0, 1), C64::new(0.0, -1.0));
        assert_eq!(s3.get(0, 0), C64::new(1.0, 0.0));
        assert_eq!(s3.get(1, 1), C64::new(-1.0, 0.0));
    }

    #[test]
    fn gell_mann_ordering_at_n3() {
        let b = SuBasis::new(3).unwrap();
        assert_eq!(b.dim(), 8);
        // diagonal generators sit at positions 3 and 8 (one-based)
        let l3 = b.matrix(2);
        assert_eq!(l3.get(0, 0).re, 1.0);
        assert_eq!(l3.get(1, 1).re, -1.0);
        assert_eq!(l3.get(2, 2).re, 0.0);
        let l5 = b.matrix(4); // antisymmetric pair (1,3)
        assert_eq!(l5.get(0, 2), C64::new(0.0, -1.0));
        assert_eq!(l5.get(2, 0), C64::new(0.0, 1.0));
        let l8 = b.matrix(7);
        let r3 = 3.0f64.sqrt();
        assert!((l8.get(0, 0).re - 1.0 / r3).abs() < 1e-15);
        assert!((l8.get(1, 1).re - 1.0 / r3).abs() < 1e-15);
        assert!((l8.get(2, 2).re + 2.0 / r3).abs() < 1e-15);
    }

    #[test]
    fn structure_constants_spot_values() {
        let b = SuBasis::new(2).unwrap();
        let (f, d) = b.structure_constants();
        assert!((f.get(&[0, 1, 2]) - 1.0).abs() < 1e-15);
        assert!(d.max_abs() < 1e-15);

        let b = SuBasis::new(3).unwrap();
        let (f, d) = b.structure_constants();
        assert!((f.get(&[0, 1, 2]) - 1.0).abs() < 1e-15);
        // one-based (1,1,8) and (4,5,8)
        let r3 = 3.0f64.sqrt();
        assert!((d.get(&[0, 0, 7]) - 1.0 / r3).abs() < 1e-15);
        assert!((f.get(&[3, 4, 7]) - r3 / 2.0).abs() < 1e-15);
    }

    #[test]
    fn exactness_small_n() {
        for n in 2..=5 {
            let b = SuBasis::new(n).unwrap();
            assert!(b.orthonormality_residual() < 1e-12, "n = {n}");
            assert!(b.completeness_residual() < 1e-12, "n = {n}");
        }
    }

    #[test]
    fn rejects_n_below_two() {
        assert!(SuBasis::new(1).is_err());
        assert!(SuBasis::new(0).is_err());
    }
}
