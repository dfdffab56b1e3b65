//! Canonical storage for totally antisymmetric and totally symmetric
//! tensors, plus small dense tensors for contraction results.
//!
//! Antisymmetric tensors store one value per strictly ascending index tuple;
//! lookups for arbitrary tuples sort the indices, apply the permutation sign
//! and return exact zero on repeats. Symmetric tensors store one value per
//! non-decreasing multiset. An antisymmetric tensor whose order exceeds its
//! dimension is a valid zero object with no stored components.

pub mod rank;
pub mod shuffle;

mod contract;
mod io;
mod project;

pub use contract::{contract, full_contract, full_contract_sym, levi_civita};
pub use io::{read_tensor, write_tensor, Format};
pub use project::{antisymmetrize, symmetrize};

use crate::error::{Error, Result};

pub const MAX_ORDER: usize = 16;

#[derive(Debug, Clone, PartialEq)]
pub struct AntisymTensor {
    dim: usize,
    order: usize,
    values: Vec<f64>,
}

impl AntisymTensor {
    pub fn zero(dim: usize, order: usize) -> Self {
        Self {
            dim,
            order,
            values: vec![0.0; rank::antisym_len(dim, order)],
        }
    }

    pub fn from_values(dim: usize, order: usize, values: Vec<f64>) -> Self {
        assert_eq!(values.len(), rank::antisym_len(dim, order));
        Self { dim, order, values }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    #[inline]
    pub fn at_rank(&self, rank: usize) -> f64 {
        self.values[rank]
    }

    /// Value at an already strictly ascending tuple.
    #[inline]
    pub fn get_ascending(&self, idx: &[usize]) -> f64 {
        debug_assert!(idx.windows(2).all(|w| w[0] < w[1]));
        if self.values.is_empty() {
            return 0.0;
        }
        self.values[rank::rank_ascending(idx)]
    }

    /// Signed lookup for an arbitrary index tuple; zero on repeated indices.
    #[inline]
    pub fn get(&self, idx: &[usize]) -> f64 {
        debug_assert_eq!(idx.len(), self.order);
        if self.values.is_empty() {
            return 0.0;
        }
        let mut buf = [0usize; MAX_ORDER];
        let buf = &mut buf[..idx.len()];
        buf.copy_from_slice(idx);
        match rank::sort_parity(buf) {
            None => 0.0,
            Some(even) => {
                let v = self.values[rank::rank_ascending(buf)];
                if even {
                    v
                } else {
                    -v
                }
            }
        }
    }

    /// Bounds-checked lookup for external callers.
    pub fn try_get(&self, idx: &[usize]) -> Result<f64> {
        if idx.len() != self.order {
            return Err(Error::ArityMismatch {
                expected: self.order,
                got: idx.len(),
            });
        }
        if let Some(&bad) = idx.iter().find(|&&i| i >= self.dim) {
            return Err(Error::IndexOutOfRange {
                index: bad,
                dim: self.dim,
            });
        }
        Ok(self.get(idx))
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Sequential walk over canonical (ascending tuple, value) entries.
    pub fn for_each(&self, mut f: impl FnMut(&[usize], f64)) {
        if self.values.is_empty() {
            return;
        }
        let mut tuple: Vec<usize> = (0..self.order).collect();
        for &v in &self.values {
            f(&tuple, v);
            rank::next_combination(&mut tuple, self.dim);
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SymTensor {
    dim: usize,
    order: usize,
    values: Vec<f64>,
}

impl SymTensor {
    pub fn zero(dim: usize, order: usize) -> Self {
        Self {
            dim,
            order,
            values: vec![0.0; rank::sym_len(dim, order)],
        }
    }

    pub fn from_values(dim: usize, order: usize, values: Vec<f64>) -> Self {
        assert_eq!(values.len(), rank::sym_len(dim, order));
        Self { dim, order, values }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    #[inline]
    pub fn at_rank(&self, rank: usize) -> f64 {
        self.values[rank]
    }

    /// Value at an already non-decreasing tuple.
    #[inline]
    pub fn get_sorted(&self, idx: &[usize]) -> f64 {
        debug_assert!(idx.windows(2).all(|w| w[0] <= w[1]));
        self.values[rank::rank_multiset(idx)]
    }

    /// Lookup for an arbitrary index tuple.
    #[inline]
    pub fn get(&self, idx: &[usize]) -> f64 {
        debug_assert_eq!(idx.len(), self.order);
        let mut buf = [0usize; MAX_ORDER];
        let buf = &mut buf[..idx.len()];
        buf.copy_from_slice(idx);
        buf.sort_unstable();
        self.values[rank::rank_multiset(buf)]
    }

    pub fn try_get(&self, idx: &[usize]) -> Result<f64> {
        if idx.len() != self.order {
            return Err(Error::ArityMismatch {
                expected: self.order,
                got: idx.len(),
            });
        }
        if let Some(&bad) = idx.iter().find(|&&i| i >= self.dim) {
            return Err(Error::IndexOutOfRange {
                index: bad,
                dim: self.dim,
            });
        }
        Ok(self.get(idx))
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn for_each(&self, mut f: impl FnMut(&[usize], f64)) {
        if self.values.is_empty() {
            return;
        }
        let mut tuple = vec![0usize; self.order];
        for &v in &self.values {
            f(&tuple, v);
            rank::next_multiset(&mut tuple, self.dim);
        }
    }
}

/// Small dense tensor, row-major with the last index fastest.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseTensor {
    dims: Vec<usize>,
    values: Vec<f64>,
}

impl DenseTensor {
    pub fn zero(dims: &[usize]) -> Self {
        let len: usize = dims.iter().product();
        Self {
            dims: dims.to_vec(),
            values: vec![0.0; len],
        }
    }

    pub fn scalar(v: f64) -> Self {
        Self {
            dims: Vec::new(),
            values: vec![v],
        }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    #[inline]
    pub fn offset(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.dims.len());
        let mut off = 0;
        for (i, &ix) in idx.iter().enumerate() {
            debug_assert!(ix < self.dims[i]);
            off = off * self.dims[i] + ix;
        }
        off
    }

    #[inline]
    pub fn get(&self, idx: &[usize]) -> f64 {
        self.values[self.offset(idx)]
    }

    #[inline]
    pub fn add(&mut self, idx: &[usize], v: f64) {
        let off = self.offset(idx);
        self.values[off] += v;
    }

    #[inline]
    pub fn set(&mut self, idx: &[usize], v: f64) {
        let off = self.offset(idx);
        self.values[off] = v;
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Largest absolute difference against another dense tensor of the same
    /// shape.
    pub fn max_abs_diff(&self, other: &DenseTensor) -> f64 {
        assert_eq!(self.dims, other.dims);
        self.values
            .iter()
            .zip(&other.values)
            .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }
}

/// Storage-tagged tensor for I/O and FFI surfaces.
#[derive(Debug, Clone, PartialEq)]
pub enum Tensor {
    Antisym(AntisymTensor),
    Sym(SymTensor),
}

impl Tensor {
    pub fn dim(&self) -> usize {
        match self {
            Tensor::Antisym(t) => t.dim(),
            Tensor::Sym(t) => t.dim(),
        }
    }

    pub fn order(&self) -> usize {
        match self {
            Tensor::Antisym(t) => t.order(),
            Tensor::Sym(t) => t.order(),
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Tensor::Antisym(t) => t.len(),
            Tensor::Sym(t) => t.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn values(&self) -> &[f64] {
        match self {
            Tensor::Antisym(t) => t.values(),
            Tensor::Sym(t) => t.values(),
        }
    }

    pub fn try_get(&self, idx: &[usize]) -> Result<f64> {
        match self {
            Tensor::Antisym(t) => t.try_get(idx),
            Tensor::Sym(t) => t.try_get(idx),
        }
    }

    pub fn max_abs(&self) -> f64 {
        match self {
            Tensor::Antisym(t) => t.max_abs(),
            Tensor::Sym(t) => t.max_abs(),
        }
    }
}
