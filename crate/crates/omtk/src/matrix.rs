//! Dense complex matrices sized for su(n) generators (n <= a few dozen).

use num_complex::Complex64;

pub type C64 = Complex64;

#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    n: usize,
    a: Vec<C64>,
}

impl CMatrix {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            a: vec![C64::new(0.0, 0.0); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.set(i, i, C64::new(1.0, 0.0));
        }
        m
    }

    pub fn data(&self) -> &[C64] {
        &self.a
    }

    pub fn data_mut(&mut self) -> &mut [C64] {
        &mut self.a
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> C64 {
        self.a[r * self.n + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: C64) {
        self.a[r * self.n + c] = v;
    }

    #[inline]
    pub fn addc(&mut self, r: usize, c: usize, v: C64) {
        self.a[r * self.n + c] += v;
    }

    /// `self += s * m`
    pub fn axpy(&mut self, s: C64, m: &CMatrix) {
        for (d, v) in self.a.iter_mut().zip(&m.a) {
            *d += s * v;
        }
    }

    pub fn scale(&mut self, s: C64) {
        for v in self.a.iter_mut() {
            *v *= s;
        }
    }

    /// `out = self * rhs` without allocating.
    pub fn mul_into(&self, rhs: &CMatrix, out: &mut CMatrix) {
        let n = self.n;
        debug_assert_eq!(rhs.n, n);
        debug_assert_eq!(out.n, n);
        for r in 0..n {
            for c in 0..n {
                let mut acc = C64::new(0.0, 0.0);
                for k in 0..n {
                    acc += self.a[r * n + k] * rhs.a[k * n + c];
                }
                out.a[r * n + c] = acc;
            }
        }
    }

    pub fn mul(&self, rhs: &CMatrix) -> CMatrix {
        let mut out = CMatrix::zero(self.n);
        self.mul_into(rhs, &mut out);
        out
    }

    pub fn trace(&self) -> C64 {
        (0..self.n).map(|i| self.a[i * self.n + i]).sum()
    }

    /// `Tr(self * rhs)` without forming the product.
    pub fn trace_mul(&self, rhs: &CMatrix) -> C64 {
        let n = self.n;
        let mut acc = C64::new(0.0, 0.0);
        for r in 0..n {
            for c in 0..n {
                acc += self.a[r * n + c] * rhs.a[c * n + r];
            }
        }
        acc
    }

    pub fn dagger(&self) -> CMatrix {
        let mut out = CMatrix::zero(self.n);
        for r in 0..self.n {
            for c in 0..self.n {
                out.set(c, r, self.get(r, c).conj());
            }
        }
        out
    }

    pub fn max_abs(&self) -> f64 {
        self.a.iter().fold(0.0, |m, v| m.max(v.norm()))
    }

    pub fn max_abs_diff(&self, other: &CMatrix) -> f64 {
        debug_assert_eq!(self.n, other.n);
        self.a
            .iter()
            .zip(&other.a)
            .fold(0.0, |m, (x, y)| m.max((x - y).norm()))
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.max_abs_diff(&self.dagger()) < tol
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiply_and_trace() {
        let mut a = CMatrix::zero(2);
        a.set(0, 1, C64::new(1.0, 0.0));
        a.set(1, 0, C64::new(1.0, 0.0)); // sigma_1
        let mut b = CMatrix::zero(2);
        b.set(0, 1, C64::new(0.0, -1.0));
        b.set(1, 0, C64::new(0.0, 1.0)); // sigma_2
        let p = a.mul(&b);
        // sigma_1 sigma_2 = i sigma_3
        assert_eq!(p.get(0, 0), C64::new(0.0, 1.0));
        assert_eq!(p.get(1, 1), C64::new(0.0, -1.0));
        assert_eq!(p.trace(), C64::new(0.0, 0.0));
        assert_eq!(a.trace_mul(&b), p.trace());
        assert!(a.is_hermitian(1e-15) && b.is_hermitian(1e-15));
    }
}
