//! Least-squares resolution of a measured tensor in a small span of
//! candidate invariants, used where a coefficient is pinned down
//! numerically rather than quoted.

use crate::error::{Error, Result};
use crate::tensor::{full_contract_sym, SymTensor};

/// Solve the normal equations for y ~ sum_k c_k B_k given the Gram matrix
/// `gram[k][l] = <B_k, B_l>` (row-major), the projections `proj[k] = <y, B_k>`
/// and `yy = <y, y>`. Returns the coefficients and the relative residual
/// norm `|y - sum c_k B_k| / |y|` (absolute norm when y vanishes).
///
/// Gaussian elimination with partial pivoting; the spans here have at most
/// three members. Fails with `DegenerateFit` when the Gram matrix is
/// numerically singular, which is how a vanishing basis (low n) shows up.
pub fn fit_in_span(gram: &[f64], proj: &[f64], yy: f64) -> Result<(Vec<f64>, f64)> {
    let k = proj.len();
    assert_eq!(gram.len(), k * k, "gram must be k x k");
    let mut a = gram.to_vec();
    let mut c = proj.to_vec();
    let scale = a
        .iter()
        .fold(0.0f64, |m, &v| m.max(v.abs()))
        .max(1e-300);

    for col in 0..k {
        let pivot_row = (col..k)
            .max_by(|&r1, &r2| {
                a[r1 * k + col]
                    .abs()
                    .total_cmp(&a[r2 * k + col].abs())
            })
            .unwrap();
        if a[pivot_row * k + col].abs() < 1e-12 * scale {
            return Err(Error::DegenerateFit);
        }
        if pivot_row != col {
            for j in 0..k {
                a.swap(col * k + j, pivot_row * k + j);
            }
            c.swap(col, pivot_row);
        }
        let piv = a[col * k + col];
        for row in col + 1..k {
            let m = a[row * k + col] / piv;
            if m == 0.0 {
                continue;
            }
            for j in col..k {
                a[row * k + j] -= m * a[col * k + j];
            }
            c[row] -= m * c[col];
        }
    }
    for col in (0..k).rev() {
        let mut v = c[col];
        for j in col + 1..k {
            v -= a[col * k + j] * c[j];
        }
        c[col] = v / a[col * k + col];
    }

    // |y - Bc|^2 = yy - 2 c.proj + c.G.c, clamped against cancellation.
    let mut quad = 0.0;
    let mut cross = 0.0;
    for i in 0..k {
        cross += c[i] * proj[i];
        for j in 0..k {
            quad += c[i] * gram[i * k + j] * c[j];
        }
    }
    let res2 = (yy - 2.0 * cross + quad).max(0.0);
    let rel = if yy > 0.0 {
        (res2 / yy).sqrt()
    } else {
        res2.sqrt()
    };
    Ok((c, rel))
}

/// Coefficient of the order-5 t-tensor in its closed form: fit
/// `t5 ~ c * (n (n^2+5) d5 - 2 (3 n^2 - 20) dd5)` where dd5 is the
/// symmetrized delta-d product. Returns the coefficient and the relative
/// residual. Below n = 5 both sides vanish and the fit is degenerate.
pub fn fit_lambda_coefficient(
    t5: &SymTensor,
    d5: &SymTensor,
    dd5: &SymTensor,
    n: usize,
) -> Result<(f64, f64)> {
    let nf = n as f64;
    let c_d = nf * (nf * nf + 5.0);
    let c_dd = -2.0 * (3.0 * nf * nf - 20.0);
    let mut basis = d5.clone();
    for (v, &b) in basis.values_mut().iter_mut().zip(dd5.values()) {
        *v = c_d * *v + c_dd * b;
    }
    let bb = full_contract_sym(&basis, &basis);
    let yb = full_contract_sym(t5, &basis);
    let yy = full_contract_sym(t5, t5);
    let (c, rel) = fit_in_span(&[bb], &[yb], yy)?;
    Ok((c[0], rel))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_exact_two_parameter_combination() {
        // y = 2 B0 - 0.5 B1 in a synthetic 3-vector space.
        let b0 = [1.0, 0.0, 2.0];
        let b1 = [0.0, 1.0, -1.0];
        let y: Vec<f64> = (0..3).map(|i| 2.0 * b0[i] - 0.5 * b1[i]).collect();
        let dot = |u: &[f64], v: &[f64]| u.iter().zip(v).map(|(a, b)| a * b).sum::<f64>();
        let gram = [dot(&b0, &b0), dot(&b0, &b1), dot(&b1, &b0), dot(&b1, &b1)];
        let proj = [dot(&y, &b0), dot(&y, &b1)];
        let (c, rel) = fit_in_span(&gram, &proj, dot(&y, &y)).unwrap();
        assert!((c[0] - 2.0).abs() < 1e-12);
        assert!((c[1] + 0.5).abs() < 1e-12);
        assert!(rel < 1e-12);
    }

    #[test]
    fn reports_residual_outside_the_span() {
        let gram = [1.0];
        let proj = [0.0];
        let (c, rel) = fit_in_span(&gram, &proj, 4.0).unwrap();
        assert_eq!(c[0], 0.0);
        assert!((rel - 1.0).abs() < 1e-12);
    }

    #[test]
    fn degenerate_gram_is_an_error() {
        let gram = [1.0, 1.0, 1.0, 1.0];
        let proj = [1.0, 1.0];
        assert!(matches!(
            fit_in_span(&gram, &proj, 1.0),
            Err(Error::DegenerateFit)
        ));
    }
}
