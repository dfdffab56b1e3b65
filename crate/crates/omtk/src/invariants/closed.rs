//! Closed-form values for cocycle contraction scalars, quoted by the checks
//! and by the CLI. Everything is a plain function of n so callers cannot
//! drift from one another.

/// phi(2s+1): coefficient of delta in the two-free-index full contraction
/// of two order-(2s+1) cocycles. Defined here for orders 3, 5, 7.
pub fn phi(n: usize, order: usize) -> f64 {
    let n2 = (n * n) as f64;
    let nf = n as f64;
    match order {
        3 => nf,
        5 => nf * (n2 - 4.0) / 3.0,
        7 => 2.0 / 15.0 * (n2 - 9.0) * phi(n, 5),
        _ => panic!("phi defined for orders 3, 5, 7"),
    }
}

/// psi(2s+1): full contraction of an order-(2s+1) cocycle with itself,
/// equal to phi times the algebra dimension.
pub fn psi(n: usize, order: usize) -> f64 {
    let n2 = (n * n) as f64;
    phi(n, order) * (n2 - 1.0)
}

/// Full self-contraction of the order-(2m-1) cocycle for any m >= 2:
/// `2^(2m-3) n / (2m-2)! * prod_{r=1}^{m-1} (n^2 - r^2)`.
pub fn omega_square(n: usize, m: usize) -> f64 {
    assert!(m >= 2);
    let n2 = (n * n) as f64;
    let mut v = n as f64 * 2f64.powi(2 * m as i32 - 3);
    for k in 2..=2 * m - 2 {
        v /= k as f64;
    }
    for r in 1..=m - 1 {
        v *= n2 - (r * r) as f64;
    }
    v
}

/// Step ratio between consecutive cocycle self-contractions:
/// `omega_square(n, s+1) / omega_square(n, s) = 4 (n^2 - s^2) / (2s (2s-1))`.
pub fn square_step(n: usize, s: usize) -> f64 {
    let n2 = (n * n) as f64;
    4.0 * (n2 - (s * s) as f64) / ((2 * s * (2 * s - 1)) as f64)
}

/// Coefficient of the order-5 t-tensor closed form: n / 105.
pub fn lambda_t5(n: usize) -> f64 {
    n as f64 / 105.0
}

/// Pair (a, b) with `W5 . W5 (3 common) = b ff + a (dd - dd)`:
/// a = n/6, b = (n^2 - 6)/6.
pub fn omega5_pair_coeffs(n: usize) -> (f64, f64) {
    let n2 = (n * n) as f64;
    (n as f64 / 6.0, (n2 - 6.0) / 6.0)
}

/// Pair (a, b) with `W7 . W7 (5 common) = b ff + a (dd - dd)`:
/// a = 4n (n^2-9)/135, b = 2 (n^2-9)(n^2-8)/135.
pub fn omega7_pair_coeffs(n: usize) -> (f64, f64) {
    let n2 = (n * n) as f64;
    (
        4.0 * n as f64 * (n2 - 9.0) / 135.0,
        2.0 * (n2 - 9.0) * (n2 - 8.0) / 135.0,
    )
}

/// Maximal d-d contraction: `d_abc d_abd = ((n^2-4)/n) delta_cd`.
pub fn d_pair_contract(n: usize) -> f64 {
    let nf = n as f64;
    (nf * nf - 4.0) / nf
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_ladder_is_consistent_with_the_product_form() {
        for n in 2..=8 {
            for s in 2..=6 {
                let step = omega_square(n, s + 1) / omega_square(n, s);
                assert!(
                    (step - square_step(n, s)).abs() < 1e-9 * step.abs().max(1.0),
                    "n={n} s={s}"
                );
            }
        }
    }

    #[test]
    fn psi_values_match_quoted_polynomials() {
        for n in 2..=6 {
            let n2 = (n * n) as f64;
            let nf = n as f64;
            assert!((psi(n, 3) - nf * (n2 - 1.0)).abs() < 1e-12);
            assert!((psi(n, 5) - nf * (n2 - 1.0) * (n2 - 4.0) / 3.0).abs() < 1e-9);
            assert!(
                (psi(n, 7) - 2.0 / 45.0 * nf * (n2 - 1.0) * (n2 - 4.0) * (n2 - 9.0)).abs()
                    < 1e-9
            );
        }
    }

    #[test]
    fn product_form_reproduces_low_order_contractions() {
        // The product form at m = 2, 3, 4 must equal psi(3), psi(5), psi(7).
        for n in 2..=6 {
            assert!((omega_square(n, 2) - psi(n, 3)).abs() < 1e-9);
            assert!((omega_square(n, 3) - psi(n, 5)).abs() < 1e-9);
            assert!((omega_square(n, 4) - psi(n, 7)).abs() < 1e-9);
        }
    }
}
