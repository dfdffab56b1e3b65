//! Checks on antisymmetrized and symmetrized products of the basis
//! matrices: trace evaluations against the cocycles, reductions back to
//! matrix form, sandwich contractions, ladder products, and the
//! consequences of the completeness relation.

use num_complex::Complex64 as C64;
use rand::Rng;

use super::helpers::{
    always, bracket_alt, sample_ascending, scalar, tail_row, vanish, worst,
};
use crate::error::Result;
use crate::lambda::{trace_mul_slices, LambdaAlgebra, MatLevel};
use crate::matrix::CMatrix;
use crate::tensor::rank::{
    binomial, next_combination, next_multiset, rank_ascending, rank_multiset, sort_parity,
    sym_len, unrank_ascending,
};
use crate::tensor::shuffle::shuffles;
use crate::tensor::full_contract;
use crate::verify::{CheckDef, Context, Cost, Group, Residual};

fn zmat(n: usize) -> Vec<C64> {
    vec![C64::new(0.0, 0.0); n * n]
}

fn clear(m: &mut [C64]) {
    m.iter_mut().for_each(|z| *z = C64::new(0.0, 0.0));
}

fn acc(dst: &mut [C64], src: &[C64], w: C64) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d += w * s;
    }
}

fn add_ident(dst: &mut [C64], n: usize, w: C64) {
    for r in 0..n {
        dst[r * n + r] += w;
    }
}

fn mat_mul(a: &[C64], b: &[C64], n: usize, out: &mut [C64]) {
    clear(out);
    for r in 0..n {
        for k in 0..n {
            let v = a[r * n + k];
            if v.norm_sqr() == 0.0 {
                continue;
            }
            let src = &b[k * n..k * n + n];
            let dst = &mut out[r * n..r * n + n];
            for (d, s) in dst.iter_mut().zip(src) {
                *d += v * s;
            }
        }
    }
}

pub(super) fn tr(a: &[C64], n: usize) -> C64 {
    (0..n).map(|r| a[r * n + r]).sum()
}

/// Track max elementwise deviation and the larger side's magnitude.
fn track(lhs: &[C64], rhs: &[C64], abs: &mut f64, scale: &mut f64) {
    for (l, r) in lhs.iter().zip(rhs) {
        *abs = (*l - *r).norm().max(*abs);
        *scale = l.norm().max(r.norm()).max(*scale);
    }
}

fn ipow(s: usize) -> C64 {
    match s % 4 {
        0 => C64::new(1.0, 0.0),
        1 => C64::new(0.0, 1.0),
        2 => C64::new(-1.0, 0.0),
        _ => C64::new(0.0, -1.0),
    }
}

/// Signed level lookup at an arbitrary distinct tuple; None on repeats.
fn level_term<'a>(level: &'a MatLevel, idx: &[usize]) -> Option<(f64, &'a [C64])> {
    let mut buf = [0usize; 12];
    let k = idx.len();
    buf[..k].copy_from_slice(idx);
    let even = sort_parity(&mut buf[..k])?;
    let sign = if even { 1.0 } else { -1.0 };
    Some((sign, level.mat(rank_ascending(&buf[..k]))))
}

fn lam_mat<'a>(lam: &'a LambdaAlgebra, i: usize) -> &'a [C64] {
    lam.basis().matrix(i).data()
}

fn trace_with(lam: &LambdaAlgebra, slice: &[C64], k: usize) -> C64 {
    trace_mul_slices(slice, lam_mat(lam, k), lam.n())
}

fn sandwich_slice(lam: &LambdaAlgebra, s: &[C64]) -> Vec<C64> {
    let n = lam.n();
    let mut m = CMatrix::zero(n);
    m.data_mut().copy_from_slice(s);
    let out = lam.sandwich(&m);
    out.data().to_vec()
}

pub(super) fn ascending_tuples(dim: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = binomial(dim, k) as usize;
    let mut t = vec![0usize; k];
    if total > 0 {
        unrank_ascending(0, k, &mut t);
    }
    (0..total).map(move |r| {
        if r > 0 {
            next_combination(&mut t, dim);
        }
        t.clone()
    })
}

fn multisets(dim: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = sym_len(dim, k);
    let mut t = vec![0usize; k];
    (0..total).map(move |r| {
        if r > 0 {
            next_multiset(&mut t, dim);
        }
        t.clone()
    })
}

/// Tracelessness, pairwise trace normalization, hermiticity.
fn e1(ctx: &Context) -> Result<Residual> {
    let lam = ctx.lam();
    let n = ctx.n();
    let dim = ctx.dim();
    let mut abs = 0.0f64;
    for i in 0..dim {
        let a = lam.basis().matrix(i);
        abs = abs.max(tr(a.data(), n).norm());
        for r in 0..n {
            for c in 0..n {
                abs = abs.max((a.get(r, c) - a.get(c, r).conj()).norm());
            }
        }
        for j in i..dim {
            let t = trace_mul_slices(a.data(), lam_mat(lam, j), n);
            let want = if i == j { 2.0 } else { 0.0 };
            abs = abs.max((t - want).norm());
        }
    }
    Ok(vanish(abs, 2.0))
}

/// Product decomposition lambda_i lambda_j = (2/n) delta + (d + i f) lambda,
/// plus the tracelessness of d on its first pair.
fn e2(ctx: &Context) -> Result<Residual> {
    let lam = ctx.lam();
    let set = ctx.set();
    let fd = set.f_dense();
    let dd = set.d_dense();
    let n = ctx.n();
    let dim = ctx.dim();
    let mut abs = 0.0f64;
    let mut scale = 0.0f64;
    let mut rhs = zmat(n);
    for i in 0..dim {
        for j in 0..dim {
            clear(&mut rhs);
            if i == j {
                add_ident(&mut rhs, n, C64::new(2.0 / n as f64, 0.0));
            }
            for k in 0..dim {
                let c = C64::new(dd.get(i, j, k), fd.get(i, j, k));
                if c.norm_sqr() != 0.0 {
                    acc(&mut rhs, lam_mat(lam, k), c);
                }
            }
            track(lam.pair(i, j), &rhs, &mut abs, &mut scale);
        }
    }
    let mut dtr = 0.0f64;
    for k in 0..dim {
        let s: f64 = (0..dim).map(|i| dd.get(i, i, k)).sum();
        dtr = dtr.max(s.abs());
    }
    Ok(worst(vanish(abs, scale), vanish(dtr, set.d3().max_abs())))
}

/// Triple antisymmetrized product against both closed forms: the cocycle
/// contraction route and the mixed f-d bracket route.
fn e4(ctx: &Context) -> Result<Residual> {
    let lam = ctx.lam();
    let set = ctx.set();
    let w5 = ctx.omega(3)?;
    let rows = ctx.f_rows();
    let fp = set.f_pairs();
    let fdense = set.f_dense();
    let ddense = set.d_dense();
    let n = ctx.n();
    let dim = ctx.dim();
    let lvl3 = lam.antisym_level(3);
    let reps = shuffles(3, &[(2, 1), (1, 1)]);
    let two_n = 2.0 / n as f64;
    let mut abs = 0.0f64;
    let mut scale = 0.0f64;
    let mut rhs = zmat(n);
    for (r3, t) in ascending_tuples(dim, 3).enumerate() {
        let f3 = fdense.get(t[0], t[1], t[2]);
        // cocycle route
        clear(&mut rhs);
        add_ident(&mut rhs, n, C64::new(0.0, two_n * f3));
        for q in 0..dim {
            let mut s = 0.0;
            for &(a, b, v) in &rows[q] {
                s += v * w5.get(&[t[0], t[1], t[2], a as usize, b as usize]);
            }
            let c = two_n * 2.0 * s;
            if c != 0.0 {
                acc(&mut rhs, lam_mat(lam, q), C64::new(0.0, c));
            }
        }
        track(lvl3.mat(r3), &rhs, &mut abs, &mut scale);
        // f-d bracket route
        clear(&mut rhs);
        add_ident(&mut rhs, n, C64::new(0.0, two_n * f3));
        for q in 0..dim {
            let c = bracket_alt(&reps, &t, |w| {
                fp.list(w[0], w[1])
                    .iter()
                    .map(|&(s, v)| v * ddense.get(w[2], s as usize, q))
                    .sum()
            });
            if c != 0.0 {
                acc(&mut rhs, lam_mat(lam, q), C64::new(0.0, c));
            }
        }
        track(lvl3.mat(r3), &rhs, &mut abs, &mut scale);
    }
    Ok(vanish(abs, scale))
}

/// Quadruple antisymmetrized product closes onto the order-5 cocycle tail.
fn e5(ctx: &Context) -> Result<Residual> {
    let lam = ctx.lam();
    let n = ctx.n();
    let dim = ctx.dim();
    if dim < 4 {
        return Ok(vanish(0.0, 1.0));
    }
    let a5 = ctx.a5()?;
    let lvl4 = lam.antisym_level(4);
    let mut abs = 0.0f64;
    let mut scale = 0.0f64;
    let mut rhs = zmat(n);
    for r4 in 0..lvl4.count() {
        let row = &a5[r4 * dim..(r4 + 1) * dim];
        clear(&mut rhs);
        for (t, &v) in row.iter().enumerate() {
            if v != 0.0 {
                acc(&mut rhs, lam_mat(lam, t), C64::new(-v, 0.0));
            }
        }
        track(lvl4.mat(r4), &rhs, &mut abs, &mut scale);
    }
    Ok(vanish(abs, scale))
}

/// Quadruple products are traceless.
fn e6(ctx: &Context) -> Result<Residual> {
    let lam = ctx.lam();
    let n = ctx.n();
    if ctx.dim() < 4 {
        return Ok(vanish(0.0, 1.0));
    }
    let lvl4 = lam.antisym_level(4);
    let mut abs = 0.0f64;
    for r in 0..lvl4.count() {
        abs = abs.max(tr(lvl4.mat(r), n).norm());
    }
    Ok(vanish(abs, 1.0))
}

/// Trace of a bracketed triple against a trailing generator picks up the
/// order-5 cocycle contracted with f.
fn e7(ctx: &Context) -> Result<Residual> {
    let lam = ctx.lam();
    let w5 = ctx.omega(3)?;
    let rows = ctx.f_rows();
    let n = ctx.n();
    let dim = ctx.dim();
    let lvl3 = lam.antisym_level(3);
    let coef = 4.0 / n as f64;
    let mut abs = 0.0f64;
    let mut scale = 0.0f64;
    for (r3, t) in ascending_tuples(dim, 3).enumerate() {
        for l in 0..dim {
            let lhs = trace_with(lam, lvl3.mat(r3), l);
            let mut s = 0.0;
            for &(a, b, v) in &rows[l] {
                s += v * w5.get(&[t[0], t[1], t[2], a as usize, b as usize]);
            }
            let want = C64::new(0.0, coef * 2.0 * s);
            abs = abs.max((lhs - want).norm());
            scale = scale.max(want.norm());
        }
    }
    Ok(vanish(abs, scale.max(1.0)))
}

/// Both trace routes to 2 i f: full triple bracket and single-pair bracket.
fn e8(ctx: &Context) -> Result<Residual> {
    let lam = ctx.lam();
    let set = ctx.set();
    let fdense = set.f_dense();
    let n = ctx.n();
    let dim = ctx.dim();
    let lvl2 = lam.antisym_level(2);
    let lvl3 = lam.antisym_level(3);
    let mut abs = 0.0f64;
    for (r3, t) in ascending_tuples(dim, 3).enumerate() {
        let want = C64::new(0.0, 2.0 * fdense.get(t[0], t[1], t[2]));
        abs = abs.max((tr(lvl3.mat(r3), n) - want).norm());
    }
    for (r2, p) in ascending_tuples(dim, 2).enumerate() {
        for i in 0..dim {
            let lhs = trace_mul_slices(lam_mat(lam, i), lvl2.mat(r2), n);
            let want = C64::new(0.0, 2.0 * fdense.get(i, p[0], p[1]));
            abs = abs.max((lhs - want).norm());
        }
    }
    Ok(vanish(abs, 2.0 * set.f().max_abs()))
}

/// Even antisymmetrized products are traceless (orders 2, 4, 6).
fn e8a(ctx: &Context) -> Result<Residual> {
    let lam = ctx.lam();
    let n = ctx.n();
    let dim = ctx.dim();
    let mut abs = 0.0f64;
    for s in [2usize, 4, 6] {
        if s > dim {
            continue;
        }
        let lvl = lam.antisym_level(s);
        for r in 0..lvl.count() {
            abs = abs.max(tr(lvl.mat(r), n).norm());
        }
    }
    Ok(vanish(abs, 1.0))
}

/// Quintuple trace routes: the full bracket and the bracket-then-trailing
/// generator both land on -2 times the order-5 cocycle.
fn e9(ctx: &Context) -> Result<Residual> {
    let lam = ctx.lam();
    let n = ctx.n();
    let dim = ctx.dim();
    if dim < 5 {
        return Ok(vanish(0.0, 1.0));
    }
    let w5 = ctx.omega(3)?;
    let lvl4 = lam.antisym_level(4);
    let lvl5 = lam.antisym_level(5);
    let scale = 2.0 * w5.max_abs().max(1.0);
    let mut abs = 0.0f64;
    for (r5, t) in ascending_tuples(dim, 5).enumerate() {
        let want = C64::new(-2.0 * w5.get_ascending(&t), 0.0);
        abs = abs.max((tr(lvl5.mat(r5), n) - want).norm());
    }
    for (r4, t) in ascending_tuples(dim, 4).enumerate() {
        for q in 0..dim {
            let lhs = trace_with(lam, lvl4.mat(r4), q);
            let want = C64::new(-2.0 * w5.get(&[t[0], t[1], t[2], t[3], q]), 0.0);
            abs = abs.max((lhs - want).norm());
        }
    }
    Ok(vanish(abs, scale))
}

/// Quintuple product reduced to scalar plus single-generator terms through
/// the cocycle-d bracket.
fn e10(ctx: &Context) -> Result<Residual> {
    let lam = ctx.lam();
    let n = ctx.n();
    let dim = ctx.dim();
    if dim < 5 {
        return Ok(vanish(0.0, 1.0));
    }
    let w5 = ctx.omega(3)?;
    let a5 = ctx.a5()?;
    let dp = ctx.set().d_pairs();
    let lvl5 = lam.antisym_level(5);
    let reps = shuffles(5, &[(4, 1), (1, 1)]);
    let mut rng = ctx.rng("E10");
    let cap = if ctx.n() >= 5 { 8000 } else { usize::MAX };
    let mut abs = 0.0f64;
    let mut scale = 0.0f64;
    let mut rhs = zmat(n);
    let mut c = vec![0.0f64; dim];
    for t in sample_ascending(&mut rng, dim, 5, cap) {
        c.iter_mut().for_each(|v| *v = 0.0);
        for rep in &reps {
            let b4 = [
                t[rep.positions[0]],
                t[rep.positions[1]],
                t[rep.positions[2]],
                t[rep.positions[3]],
            ];
            let q = t[rep.positions[4]];
            let (row, rsign) = tail_row(a5, dim, &b4).expect("distinct block");
            let w = rep.sign * rsign / reps.len() as f64;
            for (r, &v) in row.iter().enumerate() {
                if v == 0.0 {
                    continue;
                }
                for &(u, dv) in dp.list(q, r) {
                    c[u as usize] += w * v * dv;
                }
            }
        }
        clear(&mut rhs);
        add_ident(&mut rhs, n, C64::new(-2.0 / n as f64 * w5.get_ascending(&t), 0.0));
        for (u, &cu) in c.iter().enumerate() {
            if cu != 0.0 {
                acc(&mut rhs, lam_mat(lam, u), C64::new(-cu, 0.0));
            }
        }
        track(lvl5.mat(rank_ascending(&t)), &rhs, &mut abs, &mut scale);
    }
    Ok(vanish(abs, scale))
}

/// Sextuple product from the cocycle-f bracket over generator pairs.
fn e11(ctx: &Context) -> Result<Residual> {
    let lam = ctx.lam();
    let n = ctx.n();
    let dim = ctx.dim();
    if dim < 6 {
        return Ok(vanish(0.0, 1.0));
    }
    let a5 = ctx.a5()?;
    let fp = ctx.set().f_pairs();
    let lvl6 = lam.antisym_level(6);
    let reps = shuffles(6, &[(4, 1), (2, 1)]);
    let mut rng = ctx.rng("E11");
    let cap = if ctx.n() >= 5 { 3000 } else { usize::MAX };
    let mut abs = 0.0f64;
    let mut scale = 0.0f64;
    let mut a = zmat(n);
    let mut b = zmat(n);
    let mut ab = zmat(n);
    let mut m = zmat(n);
    let mut rhs = zmat(n);
    for t in sample_ascending(&mut rng, dim, 6, cap) {
        clear(&mut m);
        for rep in &reps {
            let b4 = [
                t[rep.positions[0]],
                t[rep.positions[1]],
                t[rep.positions[2]],
                t[rep.positions[3]],
            ];
            let (u, v) = (t[rep.positions[4]], t[rep.positions[5]]);
            let (row, rsign) = tail_row(a5, dim, &b4).expect("distinct block");
            let w = rep.sign * rsign / reps.len() as f64;
            clear(&mut a);
            for (s, &rv) in row.iter().enumerate() {
                if rv != 0.0 {
                    acc(&mut a, lam_mat(lam, s), C64::new(rv, 0.0));
                }
            }
            clear(&mut b);
            for &(q, fv) in fp.list(u, v) {
                acc(&mut b, lam_mat(lam, q as usize), C64::new(fv, 0.0));
            }
            mat_mul(&a, &b, n, &mut ab);
            acc(&mut m, &ab, C64::new(w, 0.0));
        }
        clear(&mut rhs);
        acc(&mut rhs, &m, C64::new(0.0, -1.0));
        track(lvl6.mat(rank_ascending(&t)), &rhs, &mut abs, &mut scale);
    }
    Ok(vanish(abs, scale))
}

/// Trace of a bracketed quintuple against a trailing generator equals the
/// cocycle-d bracket.
fn e11a(ctx: &Context) -> Result<Residual> {
    let lam = ctx.lam();
    let dim = ctx.dim();
    if dim < 5 {
        return Ok(vanish(0.0, 1.0));
    }
    let a5 = ctx.a5()?;
    let dd = ctx.set().d_dense();
    let lvl5 = lam.antisym_level(5);
    let reps = shuffles(5, &[(4, 1), (1, 1)]);
    let mut rng = ctx.rng("E11A");
    let cap = if ctx.n() >= 5 { 5000 } else { usize::MAX };
    let mut abs = 0.0f64;
    let mut scale = 0.0f64;
    for t in sample_ascending(&mut rng, dim, 5, cap) {
        let mat = lvl5.mat(rank_ascending(&t));
        for s in 0..dim {
            let lhs = trace_with(lam, mat, s);
            let c = bracket_alt(&reps, &t, |w| {
                let (row, rsign) = tail_row(a5, dim, &w[..4]).expect("distinct block");
                rsign
                    * row
                        .iter()
                        .enumerate()
                        .map(|(u, &v)| v * dd.get(w[4], s, u))
                        .sum::<f64>()
            });
            let want = C64::new(-2.0 * c, 0.0);
            abs = abs.max((lhs - want).norm());
            scale = scale.max(want.norm());
        }
    }
    Ok(vanish(abs, scale.max(1.0)))
}

/// Sextuple product closes onto the order-7 cocycle tail.
fn e12(ctx: &Context) -> Result<Residual> {
    let lam = ctx.lam();
    let n = ctx.n();
    let dim = ctx.dim();
    if dim < 6 {
        return Ok(vanish(0.0, 1.0));
    }
    let a7 = ctx.a7()?;
    let lvl6 = lam.antisym_level(6);
    let mut rng = ctx.rng("E12");
    let cap = if ctx.n() >= 5 { 20000 } else { usize::MAX };
    let mut abs = 0.0f64;
    let mut scale = 0.0f64;
    let mut rhs = zmat(n);
    for t in sample_ascending(&mut rng, dim, 6, cap) {
        let r6 = rank_ascending(&t);
        let row = &a7[r6 * dim..(r6 + 1) * dim];
        clear(&mut rhs);
        for (s, &v) in row.iter().enumerate() {
            if v != 0.0 {
                acc(&mut rhs, lam_mat(lam, s), C64::new(0.0, -v));
            }
        }
        track(lvl6.mat(r6), &rhs, &mut abs, &mut scale);
    }
    Ok(vanish(abs, scale))
}

/// Septuple trace equals -2i times the order-7 cocycle.
fn e12a(ctx: &Context) -> Result<Residual> {
    let lam = ctx.lam();
    let n = ctx.n();
    let dim = ctx.dim();
    if dim < 7 {
        return Ok(vanish(0.0, 1.0));
    }
    let w7 = ctx.omega(4)?;
    let lvl7 = lam.antisym_level(7);
    let mut abs = 0.0f64;
    for r in 0..lvl7.count() {
        let want = C64::new(0.0, -2.0 * w7.at_rank(r));
        abs = abs.max((tr(lvl7.mat(r), n) - want).norm());
    }
    Ok(vanish(abs, 2.0 * w7.max_abs().max(1.0)))
}

/// Septuple product reduced to scalar plus single-generator terms.
fn e12b(ctx: &Context) -> Result<Residual> {
    let lam = ctx.lam();
    let n = ctx.n();
    let dim = ctx.dim();
    if dim < 7 {
        return Ok(vanish(0.0, 1.0));
    }
    let w7 = ctx.omega(4)?;
    let a7 = ctx.a7()?;
    let dp = ctx.set().d_pairs();
    let lvl7 = lam.antisym_level(7);
    let reps = shuffles(7, &[(6, 1), (1, 1)]);
    let mut rng = ctx.rng("E12B");
    let cap = if ctx.n() >= 5 { 2000 } else { usize::MAX };
    let mut abs = 0.0f64;
    let mut scale = 0.0f64;
    let mut rhs = zmat(n);
    let mut c = vec![0.0f64; dim];
    for t in sample_ascending(&mut rng, dim, 7, cap) {
        c.iter_mut().for_each(|v| *v = 0.0);
        for rep in &reps {
            let b6: Vec<usize> = rep.positions[..6].iter().map(|&p| t[p]).collect();
            let r = t[rep.positions[6]];
            let (row, rsign) = tail_row(a7, dim, &b6).expect("distinct block");
            let w = rep.sign * rsign / reps.len() as f64;
            for (s, &v) in row.iter().enumerate() {
                if v == 0.0 {
                    continue;
                }
                for &(u, dv) in dp.list(r, s) {
                    c[u as usize] += w * v * dv;
                }
            }
        }
        clear(&mut rhs);
        add_ident(
            &mut rhs,
            n,
            C64::new(0.0, -2.0 / n as f64 * w7.get_ascending(&t)),
        );
        for (u, &cu) in c.iter().enumerate() {
            if cu != 0.0 {
                acc(&mut rhs, lam_mat(lam, u), C64::new(0.0, -cu));
            }
        }
        track(lvl7.mat(rank_ascending(&t)), &rhs, &mut abs, &mut scale);
    }
    Ok(vanish(abs, scale))
}

/// The cocycle-f bracket contracted once more with f vanishes.
fn e13(ctx: &Context) -> Result<Residual> {
    let dim = ctx.dim();
    if dim < 6 {
        return Ok(vanish(0.0, 1.0));
    }
    let a5 = ctx.a5()?;
    let set = ctx.set();
    let fp = set.f_pairs();
    let w5 = ctx.omega(3)?;
    let fmax = set.f().max_abs();
    let reps = shuffles(6, &[(4, 1), (2, 1)]);
    let mut rng = ctx.rng("E13");
    let mut abs = 0.0f64;
    let mut vals = vec![0.0f64; dim];
    for t in sample_ascending(&mut rng, dim, 6, 2000) {
        vals.iter_mut().for_each(|v| *v = 0.0);
        for rep in &reps {
            let b4 = [
                t[rep.positions[0]],
                t[rep.positions[1]],
                t[rep.positions[2]],
                t[rep.positions[3]],
            ];
            let (p, q) = (t[rep.positions[4]], t[rep.positions[5]]);
            let (row, rsign) = tail_row(a5, dim, &b4).expect("distinct block");
            let w = rep.sign * rsign / reps.len() as f64;
            for &(u, fv) in fp.list(p, q) {
                for (s, &rv) in row.iter().enumerate() {
                    if rv == 0.0 {
                        continue;
                    }
                    for &(m, fmv) in fp.list(s, u as usize) {
                        vals[m as usize] += w * fv * rv * fmv;
                    }
                }
            }
        }
        for &v in &vals {
            abs = abs.max(v.abs());
        }
    }
    Ok(vanish(abs, w5.max_abs() * fmax * fmax))
}

/// Three trace routes to the same septuple value: full bracket, sextuple
/// bracket with trailing generator, nested (4,2) bracket with trailing
/// generator.
fn e13b(ctx: &Context) -> Result<Residual> {
    let lam = ctx.lam();
    let n = ctx.n();
    let dim = ctx.dim();
    if dim < 7 {
        return Ok(vanish(0.0, 1.0));
    }
    let lvl2 = lam.antisym_level(2);
    let lvl4 = lam.antisym_level(4);
    let lvl6 = lam.antisym_level(6);
    let lvl7 = lam.antisym_level(7);
    let reps = shuffles(6, &[(4, 1), (2, 1)]);
    let mut rng = ctx.rng("E13B");
    let cap = if ctx.n() >= 5 { 1500 } else { usize::MAX };
    let mut abs = 0.0f64;
    let mut scale = 0.0f64;
    let mut prod = zmat(n);
    for t in sample_ascending(&mut rng, dim, 7, cap) {
        let f1 = tr(lvl7.mat(rank_ascending(&t)), n);
        let f2 = trace_with(lam, lvl6.mat(rank_ascending(&t[..6])), t[6]);
        let mut f3 = C64::new(0.0, 0.0);
        for rep in &reps {
            let b4 = [
                t[rep.positions[0]],
                t[rep.positions[1]],
                t[rep.positions[2]],
                t[rep.positions[3]],
            ];
            let b2 = [t[rep.positions[4]], t[rep.positions[5]]];
            mat_mul(
                lvl4.mat(rank_ascending(&b4)),
                lvl2.mat(rank_ascending(&b2)),
                n,
                &mut prod,
            );
            f3 += rep.sign / reps.len() as f64 * trace_with(lam, &prod, t[6]);
        }
        abs = abs.max((f1 - f2).norm()).max((f1 - f3).norm());
        scale = scale.max(f1.norm());
    }
    Ok(vanish(abs, scale.max(1.0)))
}

/// Pair bracket equals half the commutator and the f-contraction.
fn e14(ctx: &Context) -> Result<Residual> {
    let lam = ctx.lam();
    let set = ctx.set();
    let fp = set.f_pairs();
    let n = ctx.n();
    let dim = ctx.dim();
    let lvl2 = lam.antisym_level(2);
    let mut abs = 0.0f64;
    let mut scale = 0.0f64;
    let mut com = zmat(n);
    let mut fsum = zmat(n);
    for (r2, p) in ascending_tuples(dim, 2).enumerate() {
        clear(&mut com);
        acc(&mut com, lam.pair(p[0], p[1]), C64::new(0.5, 0.0));
        acc(&mut com, lam.pair(p[1], p[0]), C64::new(-0.5, 0.0));
        clear(&mut fsum);
        for &(k, v) in fp.list(p[0], p[1]) {
            acc(&mut fsum, lam_mat(lam, k as usize), C64::new(0.0, v));
        }
        track(lvl2.mat(r2), &com, &mut abs, &mut scale);
        track(lvl2.mat(r2), &fsum, &mut abs, &mut scale);
    }
    Ok(vanish(abs, scale))
}

/// Even bracket traced against a trailing generator gives 2 i^s times the
/// next cocycle, for orders 2, 4, 6.
fn e16(ctx: &Context) -> Result<Residual> {
    let lam = ctx.lam();
    let dim = ctx.dim();
    let mut rng = ctx.rng("E16");
    let mut abs = 0.0f64;
    let mut scale = 0.0f64;
    for s in 1..=3usize {
        let q = 2 * s;
        if q > dim {
            continue;
        }
        let wm = ctx.omega(s + 1)?;
        let lvl = lam.antisym_level(q);
        let phase = ipow(s) * 2.0;
        let cap = if ctx.n() >= 5 && q == 6 { 4000 } else { usize::MAX };
        let mut idx = vec![0usize; q + 1];
        for t in sample_ascending(&mut rng, dim, q, cap) {
            let mat = lvl.mat(rank_ascending(&t));
            idx[..q].copy_from_slice(&t);
            for k in 0..dim {
                idx[q] = k;
                let want = phase * wm.get(&idx);
                let lhs = trace_with(lam, mat, k);
                abs = abs.max((lhs - want).norm());
                scale = scale.max(want.norm());
            }
        }
    }
    Ok(vanish(abs, scale.max(1.0)))
}

/// Even bracket written as chained f-pairs against the symmetrized product,
/// for two and three pairs.
fn nn1(ctx: &Context) -> Result<Residual> {
    let lam = ctx.lam();
    let set = ctx.set();
    let fp = set.f_pairs();
    let n = ctx.n();
    let dim = ctx.dim();
    let mut rng = ctx.rng("NN1");
    let mut abs = 0.0f64;
    let mut scale = 0.0f64;
    let mut rhs = zmat(n);
    for s in [2usize, 3] {
        let q = 2 * s;
        if q > dim {
            continue;
        }
        let reps = shuffles(q, &[(2, s)]);
        let syml = lam.sym_level(s);
        let lvl = lam.antisym_level(q);
        let phase = ipow(s);
        let cap = if ctx.n() >= 5 && s == 3 { 2000 } else { usize::MAX };
        let mut coef = vec![0.0f64; sym_len(dim, s)];
        let mut touched: Vec<usize> = Vec::new();
        for t in sample_ascending(&mut rng, dim, q, cap) {
            for &r in &touched {
                coef[r] = 0.0;
            }
            touched.clear();
            for rep in &reps {
                let w = rep.sign / reps.len() as f64;
                let mut stack = [0usize; 3];
                // nested f-pair walk over the s blocks
                fn walk(
                    fp: &crate::invariants::PairTable,
                    t: &[usize],
                    pos: &[usize],
                    depth: usize,
                    s: usize,
                    c: f64,
                    stack: &mut [usize; 3],
                    coef: &mut [f64],
                    touched: &mut Vec<usize>,
                ) {
                    if depth == s {
                        let mut key = [0usize; 3];
                        key[..s].copy_from_slice(&stack[..s]);
                        key[..s].sort_unstable();
                        let r = rank_multiset(&key[..s]);
                        if coef[r] == 0.0 {
                            touched.push(r);
                        }
                        coef[r] += c;
                        return;
                    }
                    let (a, b) = (t[pos[2 * depth]], t[pos[2 * depth + 1]]);
                    for &(p, v) in fp.list(a, b) {
                        stack[depth] = p as usize;
                        walk(fp, t, pos, depth + 1, s, c * v, stack, coef, touched);
                    }
                }
                walk(
                    fp,
                    &t,
                    &rep.positions,
                    0,
                    s,
                    w,
                    &mut stack,
                    &mut coef,
                    &mut touched,
                );
            }
            clear(&mut rhs);
            for &r in &touched {
                if coef[r] != 0.0 {
                    acc(&mut rhs, syml.mat(r), phase * coef[r]);
                }
            }
            track(lvl.mat(rank_ascending(&t)), &rhs, &mut abs, &mut scale);
        }
    }
    Ok(vanish(abs, scale))
}

/// Shared expansion of the symmetrized quadruple product; `end_route`
/// selects the trailing-exempt order-5 closure, otherwise the middle-exempt
/// one with its different delta-d weight.
fn sym4_expansion(ctx: &Context, end_route: bool) -> Result<Residual> {
    let lam = ctx.lam();
    let set = ctx.set();
    let n = ctx.n();
    let nf = n as f64;
    let dim = ctx.dim();
    let sym4 = lam.sym_level(4);
    let d3 = set.d_dense();
    let dp = set.d_pairs();
    let d4 = set.d(4)?;
    let dd4 = ctx.deltadelta4();
    let tail: &[crate::tensor::SymTensor] = if end_route {
        set.d_le(5)?
    } else {
        ctx.me5()
    };
    let reps31 = shuffles(4, &[(3, 1), (1, 1)]);
    let reps22 = shuffles(4, &[(2, 1), (2, 1)]);
    let dweight = if end_route { 2.0 / nf } else { 4.0 / nf };
    let mut abs = 0.0f64;
    let mut scale = 0.0f64;
    let mut rhs = zmat(n);
    for (r4, t) in multisets(dim, 4).enumerate() {
        clear(&mut rhs);
        let s0 = 4.0 / (nf * nf) * dd4.at_rank(r4) + 2.0 / nf * d4.at_rank(r4);
        add_ident(&mut rhs, n, C64::new(s0, 0.0));
        if end_route {
            for rep in &reps31 {
                let c = 2.0 / nf / reps31.len() as f64
                    * d3.get(t[rep.positions[0]], t[rep.positions[1]], t[rep.positions[2]]);
                if c != 0.0 {
                    acc(&mut rhs, lam_mat(lam, t[rep.positions[3]]), C64::new(c, 0.0));
                }
            }
        }
        for rep in &reps22 {
            if t[rep.positions[0]] != t[rep.positions[1]] {
                continue;
            }
            let w = dweight / reps22.len() as f64;
            for &(y, v) in dp.list(t[rep.positions[2]], t[rep.positions[3]]) {
                acc(&mut rhs, lam_mat(lam, y as usize), C64::new(w * v, 0.0));
            }
        }
        for (y, tensor) in tail.iter().enumerate() {
            let c = tensor.at_rank(r4);
            if c != 0.0 {
                acc(&mut rhs, lam_mat(lam, y), C64::new(c, 0.0));
            }
        }
        track(sym4.mat(r4), &rhs, &mut abs, &mut scale);
    }
    Ok(vanish(abs, scale))
}

fn nn5(ctx: &Context) -> Result<Residual> {
    sym4_expansion(ctx, true)
}

fn nn8(ctx: &Context) -> Result<Residual> {
    sym4_expansion(ctx, false)
}

/// Symmetrized trace insensitivity: trailing generator against the
/// symmetrized quadruple equals the symmetrized quintuple trace.
fn nn6(ctx: &Context) -> Result<Residual> {
    let lam = ctx.lam();
    let n = ctx.n();
    let dim = ctx.dim();
    let sym4 = lam.sym_level(4);
    let sym5 = lam.sym_level(5);
    let mut abs = 0.0f64;
    let mut scale = 0.0f64;
    let mut key = [0usize; 5];
    for (r4, t) in multisets(dim, 4).enumerate() {
        for e in 0..dim {
            let lhs = trace_with(lam, sym4.mat(r4), e);
            key[..4].copy_from_slice(&t);
            key[4] = e;
            key.sort_unstable();
            let rhs = tr(sym5.mat(rank_multiset(&key)), n);
            abs = abs.max((lhs - rhs).norm());
            scale = scale.max(rhs.norm());
        }
    }
    Ok(vanish(abs, scale.max(1.0)))
}

/// Octuple bracket through four f-pairs and an order-5 closure; both the
/// trailing-exempt and middle-exempt routes must reproduce it.
fn lambda8_route(ctx: &Context, middle: bool) -> Result<Residual> {
    let lam = ctx.lam();
    let set = ctx.set();
    let fp = set.f_pairs();
    let n = ctx.n();
    let dim = ctx.dim();
    if dim < 8 {
        return Ok(vanish(0.0, 1.0));
    }
    let tail: &[crate::tensor::SymTensor] = if middle { ctx.me5() } else { set.d_le(5)? };
    let lvl8 = lam.antisym_level(8);
    let reps = shuffles(8, &[(2, 4)]);
    let mut rng = ctx.rng(if middle { "NN11" } else { "NN10" });
    let cap = if dim > 10 { 400 } else { usize::MAX };
    let mut abs = 0.0f64;
    let mut scale = 0.0f64;
    let mut coef = vec![0.0f64; sym_len(dim, 4)];
    let mut touched: Vec<usize> = Vec::new();
    let mut ct = vec![0.0f64; dim];
    let mut rhs = zmat(n);
    for t in sample_ascending(&mut rng, dim, 8, cap) {
        for &r in &touched {
            coef[r] = 0.0;
        }
        touched.clear();
        for rep in &reps {
            let w = rep.sign / reps.len() as f64;
            let pr = &rep.positions;
            for &(a, va) in fp.list(t[pr[0]], t[pr[1]]) {
                for &(b, vb) in fp.list(t[pr[2]], t[pr[3]]) {
                    for &(c, vc) in fp.list(t[pr[4]], t[pr[5]]) {
                        for &(y, vy) in fp.list(t[pr[6]], t[pr[7]]) {
                            let mut key = [a as usize, b as usize, c as usize, y as usize];
                            key.sort_unstable();
                            let r = rank_multiset(&key);
                            if coef[r] == 0.0 {
                                touched.push(r);
                            }
                            coef[r] += w * va * vb * vc * vy;
                        }
                    }
                }
            }
        }
        ct.iter_mut().for_each(|v| *v = 0.0);
        for &r in &touched {
            let c = coef[r];
            if c == 0.0 {
                continue;
            }
            for (u, tensor) in tail.iter().enumerate() {
                ct[u] += c * tensor.at_rank(r);
            }
        }
        clear(&mut rhs);
        for (u, &cu) in ct.iter().enumerate() {
            if cu != 0.0 {
                acc(&mut rhs, lam_mat(lam, u), C64::new(cu, 0.0));
            }
        }
        track(lvl8.mat(rank_ascending(&t)), &rhs, &mut abs, &mut scale);
    }
    Ok(vanish(abs, scale))
}

fn nn10(ctx: &Context) -> Result<Residual> {
    lambda8_route(ctx, false)
}

fn nn11(ctx: &Context) -> Result<Residual> {
    lambda8_route(ctx, true)
}

/// Symmetrized triple trace against a trailing generator: both the
/// quadruple-trace route and the delta/d-chain closed form.
fn t2(ctx: &Context) -> Result<Residual> {
    let lam = ctx.lam();
    let n = ctx.n();
    let nf = n as f64;
    let dim = ctx.dim();
    let sym3 = lam.sym_level(3);
    let sym4 = lam.sym_level(4);
    let dd = ctx.dd();
    let mut abs = 0.0f64;
    let mut scale = 0.0f64;
    for (r3, t) in multisets(dim, 3).enumerate() {
        let (a, b, c) = (t[0], t[1], t[2]);
        for q in 0..dim {
            let lhs1 = trace_with(lam, sym3.mat(r3), q);
            let mut key = [q, a, b, c];
            key.sort_unstable();
            let lhs2 = tr(sym4.mat(rank_multiset(&key)), n);
            let del = |x: usize, y: usize| if x == y { 1.0 } else { 0.0 };
            let dpart = (del(q, a) * del(b, c) + del(q, b) * del(a, c) + del(q, c) * del(a, b)) / 3.0;
            let chain = (dd.get(q, a, b, c) + dd.get(q, b, c, a) + dd.get(q, c, a, b)) / 3.0;
            let want = C64::new(4.0 / nf * dpart + 2.0 * chain, 0.0);
            abs = abs.max((lhs1 - want).norm()).max((lhs2 - want).norm());
            scale = scale.max(want.norm());
        }
    }
    Ok(vanish(abs, scale.max(1.0)))
}

/// Completeness of the basis over traceless hermitian matrices.
fn p1(ctx: &Context) -> Result<Residual> {
    let lam = ctx.lam();
    let n = ctx.n();
    let nf = n as f64;
    let dim = ctx.dim();
    let mats: Vec<&CMatrix> = (0..dim).map(|i| lam.basis().matrix(i)).collect();
    let mut abs = 0.0f64;
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    let lhs: C64 = mats.iter().map(|m| m.get(a, b) * m.get(c, d)).sum();
                    let want = C64::new(
                        2.0 * del(a, d) * del(c, b) - 2.0 / nf * del(a, b) * del(c, d),
                        0.0,
                    );
                    abs = abs.max((lhs - want).norm());
                }
            }
        }
    }
    Ok(vanish(abs, 2.0))
}

fn del(a: usize, b: usize) -> f64 {
    if a == b {
        1.0
    } else {
        0.0
    }
}

/// f-weighted double product in element form.
fn p2(ctx: &Context) -> Result<Residual> {
    let lam = ctx.lam();
    let rows = ctx.f_rows();
    let n = ctx.n();
    let dim = ctx.dim();
    let mut abs = 0.0f64;
    for i in 0..dim {
        let li = lam.basis().matrix(i);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        let mut lhs = C64::new(0.0, 0.0);
                        for &(j, k, v) in &rows[i] {
                            let (mj, mk) =
                                (lam.basis().matrix(j as usize), lam.basis().matrix(k as usize));
                            lhs += v * (mj.get(a, b) * mk.get(c, d) - mk.get(a, b) * mj.get(c, d));
                        }
                        lhs *= C64::new(0.0, -1.0);
                        let want = li.get(a, d) * del(c, b) - li.get(c, b) * del(a, d);
                        abs = abs.max((lhs - want).norm());
                    }
                }
            }
        }
    }
    Ok(vanish(abs, 2.0))
}

/// d-weighted double product in element form.
fn p3(ctx: &Context) -> Result<Residual> {
    let lam = ctx.lam();
    let dp = ctx.set().d_pairs();
    let n = ctx.n();
    let nf = n as f64;
    let dim = ctx.dim();
    let nn = n * n;
    let mut abs = 0.0f64;
    let mut lhs = vec![C64::new(0.0, 0.0); nn * nn];
    for i in 0..dim {
        let li = lam.basis().matrix(i);
        lhs.iter_mut().for_each(|z| *z = C64::new(0.0, 0.0));
        for j in 0..dim {
            let mj = lam.basis().matrix(j);
            for &(k, v) in dp.list(i, j) {
                let mk = lam.basis().matrix(k as usize);
                for ab in 0..nn {
                    let x = mj.data()[ab] * v;
                    if x.norm_sqr() == 0.0 {
                        continue;
                    }
                    let row = &mut lhs[ab * nn..(ab + 1) * nn];
                    for (slot, w) in row.iter_mut().zip(mk.data()) {
                        *slot += x * w;
                    }
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        let got = lhs[(a * n + b) * nn + c * n + d];
                        let want = li.get(a, d) * del(b, c) + li.get(c, b) * del(a, d)
                            - 2.0 / nf * (li.get(a, b) * del(c, d) + li.get(c, d) * del(a, b));
                        abs = abs.max((got - want).norm());
                    }
                }
            }
        }
    }
    Ok(vanish(abs, 2.0))
}

/// Full bracket-squared sums in element form: both sides are order-4
/// arrays over matrix elements.
fn bracket_pair_sum(ctx: &Context, k: usize, c_lam: f64, c_del: f64) -> Result<Residual> {
    let lam = ctx.lam();
    let n = ctx.n();
    let dim = ctx.dim();
    let nn = n * n;
    let mut lhs = vec![C64::new(0.0, 0.0); nn * nn];
    if k <= dim {
        let lvl = lam.antisym_level(k);
        let fact: f64 = (1..=k).product::<usize>() as f64;
        for r in 0..lvl.count() {
            let m = lvl.mat(r);
            for ab in 0..nn {
                let x = m[ab] * fact;
                if x.norm_sqr() == 0.0 {
                    continue;
                }
                let row = &mut lhs[ab * nn..(ab + 1) * nn];
                for (slot, w) in row.iter_mut().zip(m) {
                    *slot += x * w;
                }
            }
        }
    }
    let mut abs = 0.0f64;
    let mut scale = 0.0f64;
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    let mut want = C64::new(0.0, 0.0);
                    for i in 0..dim {
                        let m = lam.basis().matrix(i);
                        want += m.get(a, b) * m.get(c, d);
                    }
                    want *= c_lam;
                    want += C64::new(c_del * del(a, b) * del(c, d), 0.0);
                    let got = lhs[(a * n + b) * nn + c * n + d];
                    abs = abs.max((got - want).norm());
                    scale = scale.max(want.norm());
                }
            }
        }
    }
    Ok(vanish(abs, scale.max(1.0)))
}

fn p4(ctx: &Context) -> Result<Residual> {
    let n = ctx.n() as f64;
    bracket_pair_sum(ctx, 2, -n, 0.0)
}

fn p5(ctx: &Context) -> Result<Residual> {
    let n = ctx.n() as f64;
    bracket_pair_sum(ctx, 3, -2.0 / 3.0 * (n * n - 4.0), -4.0 / n * (n * n - 1.0))
}

fn p6(ctx: &Context) -> Result<Residual> {
    let n = ctx.n() as f64;
    bracket_pair_sum(ctx, 4, n / 3.0 * (n * n - 4.0), 0.0)
}

fn p6a(ctx: &Context) -> Result<Residual> {
    let n = ctx.n() as f64;
    bracket_pair_sum(
        ctx,
        5,
        2.0 / 15.0 * (n * n - 4.0) * (n * n - 6.0),
        4.0 / (3.0 * n) * (n * n - 1.0) * (n * n - 4.0),
    )
}

/// Full bracket-squared sums as matrix products: multiples of the identity.
fn bracket_square_sum(ctx: &Context, k: usize, want: f64) -> Result<Residual> {
    let lam = ctx.lam();
    let n = ctx.n();
    let dim = ctx.dim();
    let mut total = zmat(n);
    if k == 1 {
        for i in 0..dim {
            acc(&mut total, lam.pair(i, i), C64::new(1.0, 0.0));
        }
    } else if k <= dim {
        let lvl = lam.antisym_level(k);
        let fact: f64 = (1..=k).product::<usize>() as f64;
        let mut sq = zmat(n);
        for r in 0..lvl.count() {
            mat_mul(lvl.mat(r), lvl.mat(r), n, &mut sq);
            acc(&mut total, &sq, C64::new(fact, 0.0));
        }
    }
    let mut rhs = zmat(n);
    add_ident(&mut rhs, n, C64::new(want, 0.0));
    let mut abs = 0.0f64;
    let mut scale = 0.0f64;
    track(&total, &rhs, &mut abs, &mut scale);
    Ok(vanish(abs, scale.max(1.0)))
}

fn p7(ctx: &Context) -> Result<Residual> {
    let n = ctx.n() as f64;
    bracket_square_sum(ctx, 1, 2.0 / n * (n * n - 1.0))
}

fn p8(ctx: &Context) -> Result<Residual> {
    let n = ctx.n() as f64;
    bracket_square_sum(ctx, 2, -2.0 * (n * n - 1.0))
}

fn p9(ctx: &Context) -> Result<Residual> {
    let n = ctx.n() as f64;
    bracket_square_sum(ctx, 3, -4.0 / (3.0 * n) * (n * n - 1.0) * (n * n - 1.0))
}

fn p10(ctx: &Context) -> Result<Residual> {
    let n = ctx.n() as f64;
    bracket_square_sum(ctx, 4, 2.0 / 3.0 * (n * n - 1.0) * (n * n - 4.0))
}

fn p10a(ctx: &Context) -> Result<Residual> {
    let n = ctx.n() as f64;
    bracket_square_sum(
        ctx,
        5,
        4.0 / (15.0 * n) * (n * n - 1.0) * (n * n - 1.0) * (n * n - 4.0),
    )
}

/// Sandwich of an arbitrary matrix: trace part minus 2/n of the matrix.
fn p11(ctx: &Context) -> Result<Residual> {
    let lam = ctx.lam();
    let n = ctx.n();
    let mut rng = ctx.rng("P11");
    let mut abs = 0.0f64;
    let mut scale = 0.0f64;
    for _ in 0..3 {
        let mut m = CMatrix::zero(n);
        for r in 0..n {
            for c in 0..n {
                m.set(
                    r,
                    c,
                    C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
                );
            }
        }
        let got = lam.sandwich(&m);
        let mut want = zmat(n);
        acc(&mut want, m.data(), C64::new(-2.0 / n as f64, 0.0));
        add_ident(&mut want, n, 2.0 * tr(m.data(), n));
        track(got.data(), &want, &mut abs, &mut scale);
    }
    Ok(vanish(abs, scale))
}

/// Sandwich ladder: levels 1..3 plus the odd scalar terms.
fn sandwich_level(
    ctx: &Context,
    k: usize,
    cap: usize,
    scalar_term: impl Fn(&Context, &[usize]) -> C64,
) -> Result<Residual> {
    let lam = ctx.lam();
    let n = ctx.n();
    let dim = ctx.dim();
    if k > dim {
        return Ok(vanish(0.0, 1.0));
    }
    let lvl = lam.antisym_level(k);
    let mut rng = ctx.rng("sandwich");
    let mut abs = 0.0f64;
    let mut scale = 0.0f64;
    for t in sample_ascending(&mut rng, dim, k, cap) {
        let m = lvl.mat(rank_ascending(&t));
        let got = sandwich_slice(lam, m);
        let mut want = zmat(n);
        acc(&mut want, m, C64::new(-2.0 / n as f64, 0.0));
        add_ident(&mut want, n, scalar_term(ctx, &t));
        track(&got, &want, &mut abs, &mut scale);
    }
    Ok(vanish(abs, scale))
}

fn p12(ctx: &Context) -> Result<Residual> {
    sandwich_level(ctx, 1, usize::MAX, |_, _| C64::new(0.0, 0.0))
}

fn p13(ctx: &Context) -> Result<Residual> {
    sandwich_level(ctx, 2, usize::MAX, |_, _| C64::new(0.0, 0.0))
}

fn p14(ctx: &Context) -> Result<Residual> {
    sandwich_level(ctx, 3, usize::MAX, |ctx, t| {
        C64::new(0.0, 4.0 * ctx.set().f_dense().get(t[0], t[1], t[2]))
    })
}

fn p15(ctx: &Context) -> Result<Residual> {
    sandwich_level(ctx, 5, 4000, |ctx, t| {
        C64::new(
            -4.0 * ctx.omega(3).map(|w| w.get_ascending(t)).unwrap_or(0.0),
            0.0,
        )
    })
}

fn p16(ctx: &Context) -> Result<Residual> {
    // three f-pairs: scalar term 4 i^3 = -4i times the order-7 cocycle
    sandwich_level(ctx, 7, 800, |ctx, t| {
        C64::new(
            0.0,
            -4.0 * ctx.omega(4).map(|w| w.get_ascending(t)).unwrap_or(0.0),
        )
    })
}

fn p17(ctx: &Context) -> Result<Residual> {
    let a = sandwich_level(ctx, 4, 4000, |_, _| C64::new(0.0, 0.0))?;
    let b = sandwich_level(ctx, 6, 1500, |_, _| C64::new(0.0, 0.0))?;
    Ok(worst(a, b))
}

/// Ladder products of a lower bracket into a higher one, collapsing to a
/// lower bracket with fixed coefficient. `low` indices run, `high` is the
/// low tuple extended by the free tuple.
fn ladder(
    ctx: &Context,
    low: usize,
    high: usize,
    cap: usize,
    coef: f64,
    extra: impl Fn(&Context, &[usize], &mut [C64]),
) -> Result<Residual> {
    let lam = ctx.lam();
    let n = ctx.n();
    let dim = ctx.dim();
    let free = high - low;
    let lvl_low = lam.antisym_level(low);
    // Above the dimension cap the left sum is empty; the right side is still
    // evaluated, so vanishing coefficients get asserted rather than assumed.
    let lvl_high = if high <= dim {
        Some(lam.antisym_level(high))
    } else {
        None
    };
    let fact: f64 = (1..=low).product::<usize>() as f64;
    let mut rng = ctx.rng("ladder");
    let mut abs = 0.0f64;
    let mut scale = 0.0f64;
    let mut sum = zmat(n);
    let mut prod = zmat(n);
    let mut idx = vec![0usize; high];
    for f in sample_ascending(&mut rng, dim, free, cap) {
        clear(&mut sum);
        if let Some(lvl_high) = &lvl_high {
            for (rl, t) in ascending_tuples(dim, low).enumerate() {
                idx[..low].copy_from_slice(&t);
                idx[low..].copy_from_slice(&f);
                if let Some((sign, mh)) = level_term(lvl_high, &idx) {
                    mat_mul(lvl_low.mat(rl), mh, n, &mut prod);
                    acc(&mut sum, &prod, C64::new(fact * sign, 0.0));
                }
            }
        }
        let mut want = zmat(n);
        if free == 1 {
            acc(&mut want, lam_mat(lam, f[0]), C64::new(coef, 0.0));
        } else {
            let lvl_f = lam.antisym_level(free);
            acc(
                &mut want,
                lvl_f.mat(rank_ascending(&f)),
                C64::new(coef, 0.0),
            );
        }
        extra(ctx, &f, &mut want);
        track(&sum, &want, &mut abs, &mut scale);
    }
    Ok(vanish(abs, scale.max(1.0)))
}

fn no_extra(_: &Context, _: &[usize], _: &mut [C64]) {}

fn p18(ctx: &Context) -> Result<Residual> {
    let n = ctx.n() as f64;
    ladder(ctx, 1, 2, usize::MAX, n, no_extra)
}

fn p19(ctx: &Context) -> Result<Residual> {
    let n = ctx.n() as f64;
    ladder(ctx, 1, 3, usize::MAX, 2.0 / 3.0 * (n * n - 1.0) / n, no_extra)
}

fn p20(ctx: &Context) -> Result<Residual> {
    let n = ctx.n() as f64;
    ladder(ctx, 2, 3, usize::MAX, -2.0 / 3.0 * (n * n - 1.0), no_extra)
}

fn p20a(ctx: &Context) -> Result<Residual> {
    let n = ctx.n() as f64;
    ladder(ctx, 1, 4, usize::MAX, n / 2.0, |ctx, f, want| {
        let v = ctx.set().f_dense().get(f[0], f[1], f[2]);
        add_ident(want, ctx.n(), C64::new(0.0, -v));
    })
}

fn p21(ctx: &Context) -> Result<Residual> {
    let n = ctx.n() as f64;
    ladder(ctx, 2, 4, usize::MAX, -(n * n - 4.0) / 3.0, no_extra)
}

fn p22(ctx: &Context) -> Result<Residual> {
    let n = ctx.n() as f64;
    ladder(ctx, 3, 4, usize::MAX, -n / 3.0 * (n * n - 4.0), no_extra)
}

fn p23(ctx: &Context) -> Result<Residual> {
    let n = ctx.n() as f64;
    ladder(
        ctx,
        1,
        5,
        usize::MAX,
        2.0 / (5.0 * n) * (n * n - 1.0),
        |ctx, f, want| {
            // -(4/5) i f_{[jkl} lambda_{m]}
            let lam = ctx.lam();
            let fd = ctx.set().f_dense();
            let reps = shuffles(4, &[(3, 1), (1, 1)]);
            for rep in &reps {
                let v = fd.get(f[rep.positions[0]], f[rep.positions[1]], f[rep.positions[2]]);
                let c = -0.8 / reps.len() as f64 * rep.sign * v;
                if c != 0.0 {
                    acc(want, lam_mat(lam, f[rep.positions[3]]), C64::new(0.0, c));
                }
            }
        },
    )
}

fn p24(ctx: &Context) -> Result<Residual> {
    let n = ctx.n() as f64;
    let cap = if ctx.n() >= 5 { 600 } else { usize::MAX };
    ladder(ctx, 2, 5, cap, -(n * n - 4.0) / 5.0, no_extra)
}

fn p25(ctx: &Context) -> Result<Residual> {
    let n = ctx.n() as f64;
    let cap = if ctx.n() >= 5 { 100 } else { usize::MAX };
    ladder(
        ctx,
        3,
        5,
        cap,
        -2.0 / (15.0 * n) * (n * n - 1.0) * (n * n - 4.0),
        no_extra,
    )
}

fn p26(ctx: &Context) -> Result<Residual> {
    let n = ctx.n() as f64;
    ladder(
        ctx,
        4,
        5,
        usize::MAX,
        2.0 / 15.0 * (n * n - 1.0) * (n * n - 4.0),
        no_extra,
    )
}

/// Reversed pair bracket against the running generator.
fn p27(ctx: &Context) -> Result<Residual> {
    let lam = ctx.lam();
    let n = ctx.n();
    let dim = ctx.dim();
    let lvl2 = lam.antisym_level(2);
    let mut abs = 0.0f64;
    let mut scale = 0.0f64;
    let mut sum = zmat(n);
    let mut prod = zmat(n);
    for j in 0..dim {
        clear(&mut sum);
        for i in 0..dim {
            if let Some((sign, m)) = level_term(&lvl2, &[j, i]) {
                mat_mul(m, lam_mat(lam, i), n, &mut prod);
                acc(&mut sum, &prod, C64::new(sign, 0.0));
            }
        }
        let mut want = zmat(n);
        acc(&mut want, lam_mat(lam, j), C64::new(n as f64, 0.0));
        track(&sum, &want, &mut abs, &mut scale);
    }
    Ok(vanish(abs, scale))
}

/// Traces of a generator against any bracket containing it vanish.
fn p101(ctx: &Context) -> Result<Residual> {
    let lam = ctx.lam();
    let dim = ctx.dim();
    let mut rng = ctx.rng("P101");
    let mut abs = 0.0f64;
    let mut idx = vec![0usize; 8];
    for s in 2..=6usize.min(dim) {
        let lvl = lam.antisym_level(s);
        let cap = if binomial(dim, s - 1) > 4000 { 1500 } else { usize::MAX };
        for f in sample_ascending(&mut rng, dim, s - 1, cap) {
            let mut tot = C64::new(0.0, 0.0);
            for i in 0..dim {
                idx[0] = i;
                idx[1..s].copy_from_slice(&f);
                if let Some((sign, m)) = level_term(&lvl, &idx[..s]) {
                    tot += sign * trace_mul_slices(lam_mat(lam, i), m, ctx.n());
                }
            }
            abs = abs.max(tot.norm());
        }
    }
    Ok(vanish(abs, 1.0))
}

/// Pair bracket traced against even brackets sharing the pair vanishes.
fn p104(ctx: &Context) -> Result<Residual> {
    let lam = ctx.lam();
    let n = ctx.n();
    let dim = ctx.dim();
    let lvl2 = lam.antisym_level(2);
    let mut rng = ctx.rng("P104");
    let mut abs = 0.0f64;
    let mut idx = vec![0usize; 6];
    for s in [2usize, 3] {
        let q = 2 * s;
        if q > dim {
            continue;
        }
        let lvl = lam.antisym_level(q);
        let cap = if binomial(dim, q - 2) > 3000 { 800 } else { usize::MAX };
        for f in sample_ascending(&mut rng, dim, q - 2, cap) {
            let mut tot = C64::new(0.0, 0.0);
            for (r2, p) in ascending_tuples(dim, 2).enumerate() {
                idx[..2].copy_from_slice(&p);
                idx[2..q].copy_from_slice(&f);
                if let Some((sign, m)) = level_term(&lvl, &idx[..q]) {
                    tot += 2.0 * sign * trace_mul_slices(lvl2.mat(r2), m, n);
                }
            }
            abs = abs.max(tot.norm());
        }
    }
    Ok(vanish(abs, 1.0))
}

/// Triple bracket traced against even brackets sharing the triple vanishes.
fn p106(ctx: &Context) -> Result<Residual> {
    let lam = ctx.lam();
    let n = ctx.n();
    let dim = ctx.dim();
    let lvl3 = lam.antisym_level(3);
    let mut rng = ctx.rng("P106");
    let mut abs = 0.0f64;
    let mut idx = vec![0usize; 6];
    for s in [2usize, 3] {
        let q = 2 * s;
        if q > dim {
            continue;
        }
        let lvl = lam.antisym_level(q);
        let cap = if binomial(dim, q - 3) > 2000 { 400 } else { usize::MAX };
        for f in sample_ascending(&mut rng, dim, q - 3, cap) {
            let mut tot = C64::new(0.0, 0.0);
            for (r3, p) in ascending_tuples(dim, 3).enumerate() {
                idx[..3].copy_from_slice(&p);
                idx[3..q].copy_from_slice(&f);
                if let Some((sign, m)) = level_term(&lvl, &idx[..q]) {
                    tot += 6.0 * sign * trace_mul_slices(lvl3.mat(r3), m, n);
                }
            }
            abs = abs.max(tot.norm());
        }
    }
    Ok(vanish(abs, 1.0))
}

/// Sum of squared traces of level k over all index values, with the
/// imaginary residue of the sum.
pub(super) fn trace_square_sum(lam: &LambdaAlgebra, n: usize, k: usize) -> (f64, f64) {
    let lvl = lam.antisym_level(k);
    let fact: f64 = (1..=k).product::<usize>() as f64;
    let mut re = 0.0;
    let mut im = 0.0f64;
    for r in 0..lvl.count() {
        let t = trace_mul_slices(lvl.mat(r), lvl.mat(r), n);
        re += fact * t.re;
        im = im.max(t.im.abs());
    }
    (re, im)
}

/// Squared order-5 cocycle against the traced quadruple bracket.
fn p29(ctx: &Context) -> Result<Residual> {
    let w5 = ctx.omega(3)?;
    let lhs = 4.0 * full_contract(w5, w5);
    let (re, im) = if ctx.dim() >= 4 {
        trace_square_sum(ctx.lam(), ctx.n(), 4)
    } else {
        (0.0, 0.0)
    };
    Ok(worst(scalar(lhs, 2.0 * re), vanish(im, 1.0)))
}

/// Trace-square ratio between adjacent bracket levels.
fn p30_step(ctx: &Context, s: usize) -> Result<Residual> {
    let n = ctx.n() as f64;
    let dim = ctx.dim();
    if 2 * s + 1 > dim {
        return Ok(vanish(0.0, 1.0));
    }
    let lam = ctx.lam();
    let (even, im1) = trace_square_sum(lam, ctx.n(), 2 * s);
    let (odd, im2) = trace_square_sum(lam, ctx.n(), 2 * s + 1);
    let coef = 2.0 / (2.0 * s as f64 + 1.0) * (n * n - 1.0) / n;
    Ok(worst(
        scalar(odd, coef * even),
        vanish(im1.max(im2), 1.0),
    ))
}

fn p30(ctx: &Context) -> Result<Residual> {
    Ok(worst(p30_step(ctx, 1)?, p30_step(ctx, 2)?))
}

fn p30_s3(ctx: &Context) -> Result<Residual> {
    p30_step(ctx, 3)
}

pub(super) fn defs() -> Vec<CheckDef> {
    vec![
        CheckDef {
            id: "E1",
            eq: "(E1)",
            group: Group::Lambda,
            cost: Cost::Cheap,
            max_m: 2,
            applicable: always,
            tol: None,
            run: Some(e1),
            note: "basis traces, normalization, hermiticity",
        },
        CheckDef {
            id: "E2",
            eq: "(E2)",
            group: Group::Lambda,
            cost: Cost::Cheap,
            max_m: 2,
            applicable: always,
            tol: None,
            run: Some(e2),
            note: "pair product decomposition and d-trace",
        },
        CheckDef {
            id: "E4",
            eq: "(E4)",
            group: Group::Lambda,
            cost: Cost::Cheap,
            max_m: 3,
            applicable: always,
            tol: None,
            run: Some(e4),
            note: "triple bracket against both closed forms",
        },
        CheckDef {
            id: "E5",
            eq: "(E5)",
            group: Group::Lambda,
            cost: Cost::Moderate,
            max_m: 3,
            applicable: always,
            tol: None,
            run: Some(e5),
            note: "quadruple bracket equals the order-5 cocycle tail",
        },
        CheckDef {
            id: "E6",
            eq: "(E6)",
            group: Group::Lambda,
            cost: Cost::Cheap,
            max_m: 2,
            applicable: always,
            tol: None,
            run: Some(e6),
            note: "quadruple brackets are traceless",
        },
        CheckDef {
            id: "E7",
            eq: "(E7)",
            group: Group::Lambda,
            cost: Cost::Moderate,
            max_m: 3,
            applicable: always,
            tol: None,
            run: Some(e7),
            note: "triple bracket with trailing generator traces to cocycle-f",
        },
        CheckDef {
            id: "E8",
            eq: "(E8)",
            group: Group::Lambda,
            cost: Cost::Cheap,
            max_m: 2,
            applicable: always,
            tol: None,
            run: Some(e8),
            note: "triple traces equal 2 i f through both bracketings",
        },
        CheckDef {
            id: "E8A",
            eq: "(E8A)",
            group: Group::Lambda,
            cost: Cost::Moderate,
            max_m: 2,
            applicable: always,
            tol: None,
            run: Some(e8a),
            note: "even brackets are traceless through order 6",
        },
        CheckDef {
            id: "E9",
            eq: "(E9)",
            group: Group::Lambda,
            cost: Cost::Moderate,
            max_m: 3,
            applicable: always,
            tol: None,
            run: Some(e9),
            note: "quintuple traces equal -2 times the order-5 cocycle",
        },
        CheckDef {
            id: "E10",
            eq: "(E10)",
            group: Group::Lambda,
            cost: Cost::Moderate,
            max_m: 3,
            applicable: always,
            tol: None,
            run: Some(e10),
            note: "quintuple bracket reduced to scalar plus generator terms",
        },
        CheckDef {
            id: "E11",
            eq: "(E11)",
            group: Group::Lambda,
            cost: Cost::Moderate,
            max_m: 3,
            applicable: always,
            tol: None,
            run: Some(e11),
            note: "sextuple bracket from the cocycle-f pair expansion",
        },
        CheckDef {
            id: "E11A",
            eq: "(E11A)",
            group: Group::Lambda,
            cost: Cost::Moderate,
            max_m: 3,
            applicable: always,
            tol: None,
            run: Some(e11a),
            note: "quintuple bracket with trailing generator traces to cocycle-d",
        },
        CheckDef {
            id: "E12",
            eq: "(E12)",
            group: Group::Lambda,
            cost: Cost::Moderate,
            max_m: 4,
            applicable: always,
            tol: None,
            run: Some(e12),
            note: "sextuple bracket equals the order-7 cocycle tail",
        },
        CheckDef {
            id: "E12A",
            eq: "(E12A)",
            group: Group::Lambda,
            cost: Cost::Moderate,
            max_m: 4,
            applicable: always,
            tol: None,
            run: Some(e12a),
            note: "septuple trace equals -2i times the order-7 cocycle",
        },
        CheckDef {
            id: "E12B",
            eq: "(E12B)",
            group: Group::Lambda,
            cost: Cost::Moderate,
            max_m: 4,
            applicable: always,
            tol: None,
            run: Some(e12b),
            note: "septuple bracket reduced to scalar plus generator terms",
        },
        CheckDef {
            id: "E13",
            eq: "(E13)",
            group: Group::Lambda,
            cost: Cost::Moderate,
            max_m: 3,
            applicable: always,
            tol: None,
            run: Some(e13),
            note: "cocycle-f bracket contracted with f vanishes",
        },
        CheckDef {
            id: "E13B",
            eq: "(E13B)",
            group: Group::Lambda,
            cost: Cost::Moderate,
            max_m: 2,
            applicable: always,
            tol: None,
            run: Some(e13b),
            note: "three trace routes to the septuple bracket agree",
        },
        CheckDef {
            id: "E14",
            eq: "(E14)",
            group: Group::Lambda,
            cost: Cost::Cheap,
            max_m: 2,
            applicable: always,
            tol: None,
            run: Some(e14),
            note: "pair bracket equals half-commutator and f-contraction",
        },
        CheckDef {
            id: "E16",
            eq: "(E16)",
            group: Group::Lambda,
            cost: Cost::Moderate,
            max_m: 4,
            applicable: always,
            tol: None,
            run: Some(e16),
            note: "even bracket with trailing generator traces to the next cocycle",
        },
        CheckDef {
            id: "NN1",
            eq: "(NN1)",
            group: Group::Lambda,
            cost: Cost::Moderate,
            max_m: 2,
            applicable: always,
            tol: None,
            run: Some(nn1),
            note: "even brackets as chained f-pairs on symmetrized products",
        },
        CheckDef {
            id: "NN5",
            eq: "(NN5)",
            group: Group::Lambda,
            cost: Cost::Moderate,
            max_m: 2,
            applicable: always,
            tol: None,
            run: Some(nn5),
            note: "symmetrized quadruple expansion, trailing-exempt closure",
        },
        CheckDef {
            id: "NN6",
            eq: "(NN6)",
            group: Group::Lambda,
            cost: Cost::Moderate,
            max_m: 2,
            applicable: always,
            tol: None,
            run: Some(nn6),
            note: "symmetrized trace ignores the trailing-bracket boundary",
        },
        CheckDef {
            id: "NN8",
            eq: "(NN8)",
            group: Group::Lambda,
            cost: Cost::Moderate,
            max_m: 2,
            applicable: always,
            tol: None,
            run: Some(nn8),
            note: "symmetrized quadruple expansion, middle-exempt closure",
        },
        CheckDef {
            id: "NN10",
            eq: "(NN10)",
            group: Group::Lambda,
            cost: Cost::Moderate,
            max_m: 2,
            applicable: |n| (3..=4).contains(&n),
            tol: None,
            run: Some(nn10),
            note: "octuple bracket through the trailing-exempt order-5 closure",
        },
        CheckDef {
            id: "NN11",
            eq: "(NN11)",
            group: Group::Lambda,
            cost: Cost::Moderate,
            max_m: 2,
            applicable: |n| (3..=4).contains(&n),
            tol: None,
            run: Some(nn11),
            note: "octuple bracket through the middle-exempt order-5 closure",
        },
        CheckDef {
            id: "T2",
            eq: "(T2)",
            group: Group::Lambda,
            cost: Cost::Moderate,
            max_m: 2,
            applicable: always,
            tol: None,
            run: Some(t2),
            note: "symmetrized triple trace against delta and d-chain closed form",
        },
        CheckDef {
            id: "P1",
            eq: "(P1)",
            group: Group::Complete,
            cost: Cost::Cheap,
            max_m: 2,
            applicable: always,
            tol: None,
            run: Some(p1),
            note: "completeness relation in element form",
        },
        CheckDef {
            id: "P2",
            eq: "(P2)",
            group: Group::Complete,
            cost: Cost::Cheap,
            max_m: 2,
            applicable: always,
            tol: None,
            run: Some(p2),
            note: "f-weighted double product in element form",
        },
        CheckDef {
            id: "P3",
            eq: "(P3)",
            group: Group::Complete,
            cost: Cost::Cheap,
            max_m: 2,
            applicable: always,
            tol: None,
            run: Some(p3),
            note: "d-weighted double product in element form",
        },
        CheckDef {
            id: "P4",
            eq: "(P4)",
            group: Group::Lambda,
            cost: Cost::Cheap,
            max_m: 2,
            applicable: always,
            tol: None,
            run: Some(p4),
            note: "pair bracket squared sums in element form",
        },
        CheckDef {
            id: "P5",
            eq: "(P5)",
            group: Group::Lambda,
            cost: Cost::Cheap,
            max_m: 2,
            applicable: always,
            tol: None,
            run: Some(p5),
            note: "triple bracket squared sums in element form",
        },
        CheckDef {
            id: "P6",
            eq: "(P6)",
            group: Group::Lambda,
            cost: Cost::Cheap,
            max_m: 2,
            applicable: always,
            tol: None,
            run: Some(p6),
            note: "quadruple bracket squared sums in element form",
        },
        CheckDef {
            id: "P6A",
            eq: "(P6A)",
            group: Group::Lambda,
            cost: Cost::Moderate,
            max_m: 2,
            applicable: always,
            tol: None,
            run: Some(p6a),
            note: "quintuple bracket squared sums in element form",
        },
        CheckDef {
            id: "P7",
            eq: "(P7)",
            group: Group::Lambda,
            cost: Cost::Cheap,
            max_m: 2,
            applicable: always,
            tol: None,
            run: Some(p7),
            note: "generator square sum is a multiple of the identity",
        },
        CheckDef {
            id: "P8",
            eq: "(P8)",
            group: Group::Lambda,
            cost: Cost::Cheap,
            max_m: 2,
            applicable: always,
            tol: None,
            run: Some(p8),
            note: "pair bracket square sum",
        },
        CheckDef {
            id: "P9",
            eq: "(P9)",
            group: Group::Lambda,
            cost: Cost::Cheap,
            max_m: 2,
            applicable: always,
            tol: None,
            run: Some(p9),
            note: "triple bracket square sum",
        },
        CheckDef {
            id: "P10",
            eq: "(P10)",
            group: Group::Lambda,
            cost: Cost::Cheap,
            max_m: 2,
            applicable: always,
            tol: None,
            run: Some(p10),
            note: "quadruple bracket square sum",
        },
        CheckDef {
            id: "P10A",
            eq: "(P10A)",
            group: Group::Lambda,
            cost: Cost::Moderate,
            max_m: 2,
            applicable: always,
            tol: None,
            run: Some(p10a),
            note: "quintuple bracket square sum",
        },
        CheckDef {
            id: "P11",
            eq: "(P11)",
            group: Group::Complete,
            cost: Cost::Cheap,
            max_m: 2,
            applicable: always,
            tol: None,
            run: Some(p11),
            note: "sandwich of arbitrary matrices",
        },
        CheckDef {
            id: "P12",
            eq: "(P12)",
            group: Group::Lambda,
            cost: Cost::Cheap,
            max_m: 2,
            applicable: always,
            tol: None,
            run: Some(p12),
            note: "generator sandwich",
        },
        CheckDef {
            id: "P13",
            eq: "(P13)",
            group: Group::Lambda,
            cost: Cost::Cheap,
            max_m: 2,
            applicable: always,
            tol: None,
            run: Some(p13),
            note: "pair bracket sandwich",
        },
        CheckDef {
            id: "P14",
            eq: "(P14)",
            group: Group::Lambda,
            cost: Cost::Cheap,
            max_m: 2,
            applicable: always,
            tol: None,
            run: Some(p14),
            note: "triple bracket sandwich picks up the f scalar term",
        },
        CheckDef {
            id: "P15",
            eq: "(P15)",
            group: Group::Lambda,
            cost: Cost::Moderate,
            max_m: 3,
            applicable: always,
            tol: None,
            run: Some(p15),
            note: "quintuple bracket sandwich picks up the order-5 cocycle",
        },
        CheckDef {
            id: "P16",
            eq: "(P16)",
            group: Group::Lambda,
            cost: Cost::Moderate,
            max_m: 4,
            applicable: always,
            tol: None,
            run: Some(p16),
            note: "septuple bracket sandwich picks up the order-7 cocycle",
        },
        CheckDef {
            id: "P17",
            eq: "(P17)",
            group: Group::Lambda,
            cost: Cost::Moderate,
            max_m: 2,
            applicable: always,
            tol: None,
            run: Some(p17),
            note: "even bracket sandwiches keep no scalar term",
        },
        CheckDef {
            id: "P18",
            eq: "(P18)",
            group: Group::Lambda,
            cost: Cost::Cheap,
            max_m: 2,
            applicable: always,
            tol: None,
            run: Some(p18),
            note: "generator into pair bracket",
        },
        CheckDef {
            id: "P19",
            eq: "(P19)",
            group: Group::Lambda,
            cost: Cost::Cheap,
            max_m: 2,
            applicable: always,
            tol: None,
            run: Some(p19),
            note: "generator into triple bracket",
        },
        CheckDef {
            id: "P20",
            eq: "(P20)",
            group: Group::Lambda,
            cost: Cost::Cheap,
            max_m: 2,
            applicable: always,
            tol: None,
            run: Some(p20),
            note: "pair bracket into triple bracket",
        },
        CheckDef {
            id: "P20A",
            eq: "(P20A)",
            group: Group::Lambda,
            cost: Cost::Cheap,
            max_m: 2,
            applicable: always,
            tol: None,
            run: Some(p20a),
            note: "generator into quadruple bracket",
        },
        CheckDef {
            id: "P21",
            eq: "(P21)",
            group: Group::Lambda,
            cost: Cost::Moderate,
            max_m: 2,
            applicable: always,
            tol: None,
            run: Some(p21),
            note: "pair bracket into quadruple bracket",
        },
        CheckDef {
            id: "P22",
            eq: "(P22)",
            group: Group::Lambda,
            cost: Cost::Moderate,
            max_m: 2,
            applicable: always,
            tol: None,
            run: Some(p22),
            note: "triple bracket into quadruple bracket",
        },
        CheckDef {
            id: "P23",
            eq: "(P23)",
            group: Group::Lambda,
            cost: Cost::Moderate,
            max_m: 2,
            applicable: always,
            tol: None,
            run: Some(p23),
            note: "generator into quintuple bracket with f-lambda remainder",
        },
        CheckDef {
            id: "P24",
            eq: "(P24)",
            group: Group::Lambda,
            cost: Cost::Moderate,
            max_m: 2,
            applicable: always,
            tol: None,
            run: Some(p24),
            note: "pair bracket into quintuple bracket",
        },
        CheckDef {
            id: "P25",
            eq: "(P25)",
            group: Group::Lambda,
            cost: Cost::Moderate,
            max_m: 2,
            applicable: always,
            tol: None,
            run: Some(p25),
            note: "triple bracket into quintuple bracket",
        },
        CheckDef {
            id: "P26",
            eq: "(P26)",
            group: Group::Lambda,
            cost: Cost::Moderate,
            max_m: 2,
            applicable: always,
            tol: None,
            run: Some(p26),
            note: "quadruple bracket into quintuple bracket",
        },
        CheckDef {
            id: "P27",
            eq: "(P27)",
            group: Group::Lambda,
            cost: Cost::Cheap,
            max_m: 2,
            applicable: always,
            tol: None,
            run: Some(p27),
            note: "reversed pair bracket against the running generator",
        },
        CheckDef {
            id: "P101",
            eq: "(P101)",
            group: Group::Lambda,
            cost: Cost::Moderate,
            max_m: 2,
            applicable: always,
            tol: None,
            run: Some(p101),
            note: "generator trace against containing brackets vanishes",
        },
        CheckDef {
            id: "P104",
            eq: "(P104)",
            group: Group::Lambda,
            cost: Cost::Moderate,
            max_m: 2,
            applicable: always,
            tol: None,
            run: Some(p104),
            note: "pair-sharing even-bracket traces vanish",
        },
        CheckDef {
            id: "P106",
            eq: "(P106)",
            group: Group::Lambda,
            cost: Cost::Moderate,
            max_m: 2,
            applicable: always,
            tol: None,
            run: Some(p106),
            note: "triple-sharing even-bracket traces vanish",
        },
        CheckDef {
            id: "P29",
            eq: "(P29)",
            group: Group::Lambda,
            cost: Cost::Moderate,
            max_m: 3,
            applicable: always,
            tol: None,
            run: Some(p29),
            note: "squared order-5 cocycle from the traced quadruple bracket",
        },
        CheckDef {
            id: "P30",
            eq: "(P30)",
            group: Group::Lambda,
            cost: Cost::Moderate,
            max_m: 2,
            applicable: always,
            tol: None,
            run: Some(p30),
            note: "odd-to-even trace-square ratio, first two steps",
        },
        CheckDef {
            id: "P30.s3",
            eq: "(P30)",
            group: Group::Lambda,
            cost: Cost::Moderate,
            max_m: 2,
            applicable: always,
            tol: None,
            run: Some(p30_s3),
            note: "odd-to-even trace-square ratio at the septuple step",
        },
    ]
}
