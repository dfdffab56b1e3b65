//! Invariant tensors of su(n): structure constants, the symmetric d-family,
//! the antisymmetric cocycle tensors and the symmetric t-tensors they induce.

mod dfamily;
mod duality;
mod fit;
mod omega;
mod tfamily;

pub mod closed;

pub use dfamily::{
    d_chain, d_family, d_last_exempt_family, d5_mid_exempt, d6_mid_exempt, d6_prime,
    d6_prime_last_exempt, dd_chain, ddelta4_last_exempt, ddelta5, deltadelta4, Dense4,
};
pub use duality::{complement_sign, epsilon_dual_trailing, tilde_omega8};
pub use fit::{fit_in_span, fit_lambda_coefficient};
pub use omega::{
    omega_definition, omega_definition_component, omega_recursive, omega_trace, pair_kernel,
    PairKernel,
};
pub use tfamily::{fold_f_pair, t_tensor, FoldLayer};

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::basis::SuBasis;
use crate::error::{Error, Result};
use crate::tensor::{rank, AntisymTensor, SymTensor};

/// Feasibility cap on canonical component counts (~1.6 GB of f64 payload).
pub const COMPONENT_CAP: u64 = 200_000_000;

/// Component count for the order-(2m-1) cocycle tensor at rank n.
pub fn omega_components(n: usize, m: usize) -> u64 {
    rank::binomial(n * n - 1, 2 * m - 1)
}

/// Check that the order-(2m-1) tensor fits under the component cap.
pub fn check_feasible(n: usize, m: usize) -> Result<()> {
    let components = omega_components(n, m);
    if components > COMPONENT_CAP {
        Err(Error::Infeasible {
            requested: 2 * m - 1,
            dim: n * n - 1,
            components,
            bytes: components.saturating_mul(8),
        })
    } else {
        Ok(())
    }
}

/// Dense order-3 array with O(1) unsigned lookup.
#[derive(Debug, Clone)]
pub struct Dense3 {
    dim: usize,
    v: Vec<f64>,
}

impl Dense3 {
    pub fn from_antisym(t: &AntisymTensor) -> Self {
        let dim = t.dim();
        let mut v = vec![0.0; dim * dim * dim];
        t.for_each(|idx, val| {
            let perms: [([usize; 3], f64); 6] = [
                ([idx[0], idx[1], idx[2]], val),
                ([idx[1], idx[2], idx[0]], val),
                ([idx[2], idx[0], idx[1]], val),
                ([idx[1], idx[0], idx[2]], -val),
                ([idx[0], idx[2], idx[1]], -val),
                ([idx[2], idx[1], idx[0]], -val),
            ];
            for (p, s) in perms {
                v[(p[0] * dim + p[1]) * dim + p[2]] = s;
            }
        });
        Self { dim, v }
    }

    pub fn from_sym(t: &SymTensor) -> Self {
        let dim = t.dim();
        let mut v = vec![0.0; dim * dim * dim];
        for a in 0..dim {
            for b in 0..dim {
                for c in 0..dim {
                    let mut idx = [a, b, c];
                    idx.sort_unstable();
                    v[(a * dim + b) * dim + c] = t.get_sorted(&idx);
                }
            }
        }
        Self { dim, v }
    }

    #[inline]
    pub fn get(&self, a: usize, b: usize, c: usize) -> f64 {
        self.v[(a * self.dim + b) * self.dim + c]
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
}

/// Nonzero third-index lists per ordered index pair: `list(i, j)` holds all
/// `(k, x_ijk)` with `x_ijk != 0`.
#[derive(Debug, Clone)]
pub struct PairTable {
    dim: usize,
    lists: Vec<Vec<(u32, f64)>>,
}

impl PairTable {
    pub fn new(dense: &Dense3) -> Self {
        let dim = dense.dim();
        let mut lists = vec![Vec::new(); dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    let v = dense.get(i, j, k);
                    if v != 0.0 {
                        lists[i * dim + j].push((k as u32, v));
                    }
                }
            }
        }
        Self { dim, lists }
    }

    #[inline]
    pub fn list(&self, i: usize, j: usize) -> &[(u32, f64)] {
        &self.lists[i * self.dim + j]
    }
}

/// The tensor family for one algebra rank, built through production routes.
#[derive(Debug, Clone)]
pub struct InvariantSet {
    n: usize,
    basis: Arc<SuBasis>,
    f: AntisymTensor,
    d3: SymTensor,
    f_dense: Arc<Dense3>,
    d_dense: Arc<Dense3>,
    f_pairs: Arc<PairTable>,
    d_pairs: Arc<PairTable>,
    d: BTreeMap<usize, SymTensor>,
    d_le: BTreeMap<usize, Vec<SymTensor>>,
    omega: BTreeMap<usize, AntisymTensor>,
    t: BTreeMap<usize, SymTensor>,
}

impl InvariantSet {
    /// Build structure constants, the d-family (orders 2..=6), cocycle
    /// tensors for 2 <= m <= `max_m` and t-tensors for the same range
    /// (capped at order 5).
    ///
    /// Cocycles use the definition route for m <= 3 and the single-step
    /// recursion from the next-lower cocycle for m >= 4.
    pub fn build(n: usize, max_m: usize) -> Result<Self> {
        if max_m < 2 {
            return Err(Error::BadOrder("m >= 2", max_m));
        }
        let mut set = Self::base(n)?;
        for m in 2..=max_m {
            set.push_omega(m)?;
        }
        for m in 2..=max_m.min(5) {
            let omega = &set.omega[&m];
            set.t.insert(m, t_tensor(omega, &set.f_pairs)?);
        }
        Ok(set)
    }

    /// Structure constants and d-family only.
    pub fn base(n: usize) -> Result<Self> {
        let basis = Arc::new(SuBasis::new(n)?);
        let (f, d3) = basis.structure_constants();
        let f_dense = Arc::new(Dense3::from_antisym(&f));
        let d_dense = Arc::new(Dense3::from_sym(&d3));
        let f_pairs = Arc::new(PairTable::new(&f_dense));
        let d_pairs = Arc::new(PairTable::new(&d_dense));
        let d_le = d_last_exempt_family(&d_dense, &d_pairs, 6);
        let d = d_family(&d3, &d_le, 6);
        Ok(Self {
            n,
            basis,
            f,
            d3,
            f_dense,
            d_dense,
            f_pairs,
            d_pairs,
            d,
            d_le,
            omega: BTreeMap::new(),
            t: BTreeMap::new(),
        })
    }

    /// Extend the cocycle map by order `m` (expects `m - 1` present for
    /// m >= 4).
    pub fn push_omega(&mut self, m: usize) -> Result<()> {
        if self.omega.contains_key(&m) {
            return Ok(());
        }
        check_feasible(self.n, m)?;
        let omega = if m == 2 {
            self.f.clone()
        } else if m == 3 {
            omega_definition(m, &self.f_pairs, &self.d[&m])?
        } else {
            let prev = self
                .omega
                .get(&(m - 1))
                .ok_or(Error::BadOrder("recursion needs the previous cocycle", m))?;
            omega_recursive(prev, &self.f_pairs, &self.d_dense)?
        };
        self.omega.insert(m, omega);
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn basis(&self) -> &Arc<SuBasis> {
        &self.basis
    }

    pub fn f(&self) -> &AntisymTensor {
        &self.f
    }

    pub fn d3(&self) -> &SymTensor {
        &self.d3
    }

    pub fn f_dense(&self) -> &Arc<Dense3> {
        &self.f_dense
    }

    pub fn d_dense(&self) -> &Arc<Dense3> {
        &self.d_dense
    }

    pub fn f_pairs(&self) -> &Arc<PairTable> {
        &self.f_pairs
    }

    pub fn d_pairs(&self) -> &Arc<PairTable> {
        &self.d_pairs
    }

    /// Symmetric d-family member of order `r` (2..=6).
    pub fn d(&self, r: usize) -> Result<&SymTensor> {
        self.d.get(&r).ok_or(Error::BadOrder("2 <= r <= 6", r))
    }

    /// Last-exempt d-family members of order `r` (3..=6): entry q holds the
    /// order-(r-1) symmetrization with trailing index q held fixed.
    pub fn d_le(&self, r: usize) -> Result<&[SymTensor]> {
        self.d_le
            .get(&r)
            .map(Vec::as_slice)
            .ok_or(Error::BadOrder("3 <= r <= 6", r))
    }

    /// Cocycle tensor of order `2m - 1`.
    pub fn omega(&self, m: usize) -> Result<&AntisymTensor> {
        self.omega
            .get(&m)
            .ok_or(Error::BadOrder("cocycle order not built", m))
    }

    /// Symmetric t-tensor of order `m`.
    pub fn t(&self, m: usize) -> Result<&SymTensor> {
        self.t.get(&m).ok_or(Error::BadOrder("t order not built", m))
    }
}
