//! Duality through the top-order epsilon tensor, plus non-primitive
//! antisymmetrized cocycle products. The interesting case is dimension 8,
//! where the order-3 and order-5 invariants are epsilon-duals of each other
//! up to fixed factors.

use crate::error::{Error, Result};
use crate::tensor::rank::{next_combination, rank_ascending};
use crate::tensor::{antisymmetrize, AntisymTensor};

/// Parity of the concatenation (tuple ++ complement) as a permutation of
/// 0..dim, with both halves ascending: counts cross-block inversions.
pub fn complement_sign(tuple: &[usize], comp: &[usize]) -> f64 {
    let mut inv = 0usize;
    for &t in tuple {
        inv += comp.iter().take_while(|&&c| c < t).count();
    }
    if inv % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Contraction of the order-dim epsilon tensor with `src` over the trailing
/// block: `out_T = sum_S eps_{T,S} src_S` with the sum running over all
/// ordered tuples S. Only permutations of the complement of T survive, so
/// each slot is `s! * parity * src(complement)`.
///
/// Contracting over the leading block instead differs by the block-swap
/// parity `(-1)^(|T| |S|)`.
pub fn epsilon_dual_trailing(src: &AntisymTensor) -> Result<AntisymTensor> {
    let dim = src.dim();
    let s = src.order();
    if s > dim {
        return Err(Error::BadOrder("source order exceeds dimension", s));
    }
    let out_order = dim - s;
    let factorial: f64 = (1..=s).map(|k| k as f64).product();
    let mut out = AntisymTensor::zero(dim, out_order);
    let mut tuple = vec![0usize; out_order];
    for (i, v) in tuple.iter_mut().enumerate() {
        *v = i;
    }
    let mut comp = vec![0usize; s];
    loop {
        let mut at = 0usize;
        let mut len = 0usize;
        for v in 0..dim {
            if at < out_order && tuple[at] == v {
                at += 1;
            } else {
                comp[len] = v;
                len += 1;
            }
        }
        let sign = complement_sign(&tuple, &comp);
        out.values_mut()[rank_ascending(&tuple)] =
            factorial * sign * src.at_rank(rank_ascending(&comp));
        if !next_combination(&mut tuple, dim) {
            break;
        }
    }
    Ok(out)
}

/// Non-primitive order-8 tensor: unit-weight antisymmetrization of the
/// product of the order-3 and order-5 cocycles.
pub fn tilde_omega8(w3: &AntisymTensor, w5: &AntisymTensor) -> AntisymTensor {
    let dim = w3.dim();
    antisymmetrize(dim, 8, &[(3, 1), (5, 1)], |idx| {
        let head = w3.get(&idx[..3]);
        if head == 0.0 {
            0.0
        } else {
            head * w5.get(&idx[3..])
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::levi_civita;

    #[test]
    fn dual_of_epsilon_slice_recovers_signs() {
        // In dim 4, dualize the order-1 tensor e_3: out_T = eps_{T,3}.
        let mut src = AntisymTensor::zero(4, 1);
        src.values_mut()[3] = 1.0;
        let dual = epsilon_dual_trailing(&src).unwrap();
        // eps_{0123} = +1, so out_{(0,1,2)} = +1 and tuples containing 3 die.
        assert_eq!(dual.get(&[0, 1, 2]), 1.0);
        assert_eq!(dual.get(&[0, 1, 3]), 0.0);
    }

    #[test]
    fn double_dual_is_sign_times_scaled_identity() {
        // dim 4, order 2: dual(dual(x)) = 2! 2! x for the chosen convention.
        let mut src = AntisymTensor::zero(4, 2);
        for (i, v) in src.values_mut().iter_mut().enumerate() {
            *v = (i + 1) as f64;
        }
        let dd = epsilon_dual_trailing(&epsilon_dual_trailing(&src).unwrap()).unwrap();
        for (a, b) in dd.values().iter().zip(src.values()) {
            assert!((a - 4.0 * b).abs() < 1e-13);
        }
    }

    #[test]
    fn trailing_contraction_matches_brute_force_at_dim_5() {
        let eps = levi_civita(5);
        let mut src = AntisymTensor::zero(5, 2);
        for (i, v) in src.values_mut().iter_mut().enumerate() {
            *v = (2 * i + 1) as f64;
        }
        let dual = epsilon_dual_trailing(&src).unwrap();
        let mut idx = [0usize; 5];
        for a in 0..5 {
            for b in a + 1..5 {
                for c in b + 1..5 {
                    let mut want = 0.0;
                    for p in 0..5 {
                        for q in 0..5 {
                            idx = [a, b, c, p, q];
                            want += eps.get(&idx) * src.get(&[p, q]);
                        }
                    }
                    assert!((dual.get(&[a, b, c]) - want).abs() < 1e-12);
                }
            }
        }
    }
}
