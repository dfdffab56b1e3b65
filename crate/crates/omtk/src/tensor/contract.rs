//! Contraction over canonical storage.
//!
//! `full_contract` pairs every index of two equal-order tensors: for
//! antisymmetric operands the ordered sum collapses to `q!` times the dot
//! product of canonical values; for symmetric operands each multiset carries
//! its permutation multiplicity `q! / prod(mult_i!)`.

use super::rank;
use super::{AntisymTensor, DenseTensor, SymTensor, Tensor};
use crate::error::{Error, Result};

fn factorial(q: usize) -> f64 {
    (1..=q).map(|i| i as f64).product()
}

/// Full contraction of two totally antisymmetric tensors of equal order.
pub fn full_contract(a: &AntisymTensor, b: &AntisymTensor) -> f64 {
    assert_eq!(a.dim(), b.dim());
    assert_eq!(a.order(), b.order());
    let dot = crate::par::sum(a.len(), |r| a.at_rank(r) * b.at_rank(r));
    factorial(a.order()) * dot
}

/// Full contraction of two totally symmetric tensors of equal order.
pub fn full_contract_sym(a: &SymTensor, b: &SymTensor) -> f64 {
    assert_eq!(a.dim(), b.dim());
    assert_eq!(a.order(), b.order());
    let order = a.order();
    let fact = factorial(order);
    let mut acc = 0.0;
    let mut tuple = vec![0usize; order];
    for r in 0..a.len() {
        let mut mult = fact;
        let mut run = 1usize;
        for i in 1..order {
            if tuple[i] == tuple[i - 1] {
                run += 1;
                mult /= run as f64;
            } else {
                run = 1;
            }
        }
        acc += mult * a.at_rank(r) * b.at_rank(r);
        rank::next_multiset(&mut tuple, a.dim());
    }
    acc
}

const DENSE_LIMIT: usize = 1 << 24;

fn to_dense(t: &Tensor) -> Result<DenseTensor> {
    let dims = vec![t.dim(); t.order()];
    let len: usize = dims.iter().product();
    if len > DENSE_LIMIT {
        return Err(Error::Infeasible {
            requested: t.order(),
            dim: t.dim(),
            components: len as u64,
            bytes: len as u64 * 8,
        });
    }
    let mut out = DenseTensor::zero(&dims);
    let mut idx = vec![0usize; t.order()];
    for off in 0..len {
        let mut rem = off;
        for i in (0..t.order()).rev() {
            idx[i] = rem % t.dim();
            rem /= t.dim();
        }
        let v = match t {
            Tensor::Antisym(a) => a.get(&idx),
            Tensor::Sym(s) => s.get(&idx),
        };
        out.values_mut()[off] = v;
    }
    Ok(out)
}

/// General pairwise contraction. `pairs` lists `(axis_of_a, axis_of_b)`;
/// free axes of `a` precede free axes of `b` in the result. Intended for
/// small operands (canonical storage is expanded densely first).
pub fn contract(a: &Tensor, b: &Tensor, pairs: &[(usize, usize)]) -> Result<DenseTensor> {
    let da = to_dense(a)?;
    let db = to_dense(b)?;
    dense_contract(&da, &db, pairs)
}

/// Pairwise contraction of dense tensors.
pub fn dense_contract(a: &DenseTensor, b: &DenseTensor, pairs: &[(usize, usize)]) -> Result<DenseTensor> {
    for &(pa, pb) in pairs {
        if pa >= a.dims().len() || pb >= b.dims().len() {
            return Err(Error::ArityMismatch {
                expected: a.dims().len(),
                got: pa.max(pb),
            });
        }
        if a.dims()[pa] != b.dims()[pb] {
            return Err(Error::ContractionMismatch {
                left: a.dims()[pa],
                right: b.dims()[pb],
            });
        }
    }
    let free_a: Vec<usize> = (0..a.dims().len())
        .filter(|i| !pairs.iter().any(|&(pa, _)| pa == *i))
        .collect();
    let free_b: Vec<usize> = (0..b.dims().len())
        .filter(|i| !pairs.iter().any(|&(_, pb)| pb == *i))
        .collect();
    let mut out_dims: Vec<usize> = free_a.iter().map(|&i| a.dims()[i]).collect();
    out_dims.extend(free_b.iter().map(|&i| b.dims()[i]));
    let mut out = DenseTensor::zero(&out_dims);

    let bound: usize = pairs.iter().map(|&(pa, _)| a.dims()[pa]).product();
    let out_len: usize = out_dims.iter().product::<usize>().max(1);
    let mut ia = vec![0usize; a.dims().len()];
    let mut ib = vec![0usize; b.dims().len()];
    for off in 0..out_len {
        let mut rem = off;
        for k in (0..out_dims.len()).rev() {
            let v = rem % out_dims[k];
            rem /= out_dims[k];
            if k < free_a.len() {
                ia[free_a[k]] = v;
            } else {
                ib[free_b[k - free_a.len()]] = v;
            }
        }
        let mut acc = 0.0;
        for s in 0..bound.max(1) {
            let mut rem = s;
            for &(pa, pb) in pairs {
                let v = rem % a.dims()[pa];
                rem /= a.dims()[pa];
                ia[pa] = v;
                ib[pb] = v;
            }
            acc += a.get(&ia) * b.get(&ib);
        }
        out.values_mut()[off] = acc;
    }
    Ok(out)
}

/// Totally antisymmetric unit tensor of order `q` in dimension `q`
/// (single canonical component, value one).
pub fn levi_civita(q: usize) -> AntisymTensor {
    let mut t = AntisymTensor::zero(q, q);
    t.values_mut()[0] = 1.0;
    t
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn levi_civita_signs() {
        let e = levi_civita(3);
        assert_eq!(e.get(&[0, 1, 2]), 1.0);
        assert_eq!(e.get(&[1, 0, 2]), -1.0);
        assert_eq!(e.get(&[0, 0, 2]), 0.0);
        assert_eq!(e.get(&[2, 0, 1]), 1.0);
    }

    #[test]
    fn full_contract_epsilon3() {
        // eps_{ijk} eps_{ijk} = 3! = 6
        let e = levi_civita(3);
        assert_eq!(full_contract(&e, &e), 6.0);
    }

    #[test]
    fn full_contract_sym_counts_multiplicities() {
        // delta_{ij} delta_{ij} = dim over ordered pairs
        let dim = 4;
        let mut delta = SymTensor::zero(dim, 2);
        for i in 0..dim {
            let r = rank::rank_multiset(&[i, i]);
            delta.values_mut()[r] = 1.0;
        }
        assert_eq!(full_contract_sym(&delta, &delta), dim as f64);
    }

    #[test]
    fn dense_contract_matrix_product() {
        let mut a = DenseTensor::zero(&[2, 3]);
        let mut b = DenseTensor::zero(&[3, 2]);
        for i in 0..2 {
            for j in 0..3 {
                a.set(&[i, j], (i * 3 + j) as f64);
                b.set(&[j, i], (j * 2 + i) as f64 * 0.5);
            }
        }
        let c = dense_contract(&a, &b, &[(1, 0)]).unwrap();
        assert_eq!(c.dims(), &[2, 2]);
        for i in 0..2 {
            for k in 0..2 {
                let mut expect = 0.0;
                for j in 0..3 {
                    expect += a.get(&[i, j]) * b.get(&[j, k]);
                }
                assert_eq!(c.get(&[i, k]), expect);
            }
        }
    }

    #[test]
    fn contract_antisym_against_ordered_sum() {
        let e = levi_civita(4);
        let t = Tensor::Antisym(e.clone());
        // eps_{ijkl} eps_{ijml}: contract axes (0,0),(1,1),(3,3)
        let got = contract(&t, &t, &[(0, 0), (1, 1), (3, 3)]).unwrap();
        // ordered-sum oracle
        let mut expect = DenseTensor::zero(&[4, 4]);
        for i in 0..4 {
            for j in 0..4 {
                for l in 0..4 {
                    for k in 0..4 {
                        for m in 0..4 {
                            let v = e.get(&[i, j, k, l]) * e.get(&[i, j, m, l]);
                            expect.add(&[k, m], v);
                        }
                    }
                }
            }
        }
        assert!(got.max_abs_diff(&expect) < 1e-12);
    }
}
