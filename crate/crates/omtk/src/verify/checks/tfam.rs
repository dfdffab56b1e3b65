//! t-tensor checks: the layered pair-fold against direct contraction, the
//! closed forms in d and delta, orthogonality between different orders, and
//! the collapse above the algebra rank.

use rand::Rng;

use super::helpers::{always, ge5, sample_multisets, scalar, vanish, worst};
use crate::error::Result;
use crate::invariants::{closed, fit_lambda_coefficient};
use crate::tensor::rank::next_multiset;
use crate::tensor::{AntisymTensor, MAX_ORDER};
use crate::verify::{CheckDef, Context, Cost, Group, Residual};

/// Number of distinct permutations of an ascending multiset, used to turn
/// ordered contraction sums into canonical-component sums.
fn perm_count(idx: &[usize]) -> f64 {
    let mut total = 1.0;
    for t in 2..=idx.len() {
        total *= t as f64;
    }
    let mut denom = 1.0;
    let mut i = 0;
    while i < idx.len() {
        let mut j = i + 1;
        while j < idx.len() && idx[j] == idx[i] {
            j += 1;
        }
        for t in 2..=(j - i) {
            denom *= t as f64;
        }
        i = j;
    }
    total / denom
}

/// Direct t-component: pick one ascending f-pair per emitted index straight
/// from the structure-constant rows, double for the ordered sum, and close
/// on the cocycle. Independent of the layered fold.
pub(super) fn t_direct(
    w: &AntisymTensor,
    rows: &[Vec<(u32, u32, f64)>],
    a: &[usize],
    s: usize,
) -> f64 {
    fn walk(
        w: &AntisymTensor,
        rows: &[Vec<(u32, u32, f64)>],
        a: &[usize],
        depth: usize,
        idx: &mut [usize; MAX_ORDER],
        s: usize,
        coef: f64,
        out: &mut f64,
    ) {
        if depth == a.len() {
            idx[2 * depth] = s;
            *out += coef * w.get(&idx[..2 * depth + 1]);
            return;
        }
        for &(i, j, v) in &rows[a[depth]] {
            idx[2 * depth] = i as usize;
            idx[2 * depth + 1] = j as usize;
            walk(w, rows, a, depth + 1, idx, s, 2.0 * coef * v, out);
        }
    }
    let mut idx = [0usize; MAX_ORDER];
    let mut out = 0.0;
    walk(w, rows, a, 0, &mut idx, s, 1.0, &mut out);
    out
}

/// Shared harness: stored fold-built t(m) against the direct contraction at
/// sampled components.
fn fold_vs_direct(ctx: &Context, m: usize, cap: usize) -> Result<Residual> {
    let t = ctx.t(m)?;
    let w = ctx.omega(m)?;
    let rows = ctx.f_rows();
    let mut rng = ctx.rng(&format!("TFAM.direct{m}"));
    let mut found = 0.0f64;
    for tuple in sample_multisets(&mut rng, ctx.dim(), m, cap) {
        let direct = t_direct(w, rows, &tuple[..m - 1], tuple[m - 1]);
        found = found.max((direct - t.get_sorted(&tuple)).abs());
    }
    Ok(vanish(found, t.max_abs().max(1.0)))
}

fn b6a(ctx: &Context) -> Result<Residual> {
    fold_vs_direct(ctx, 2, usize::MAX)
}

fn b7(ctx: &Context) -> Result<Residual> {
    fold_vs_direct(ctx, 3, 400)
}

fn b8(ctx: &Context) -> Result<Residual> {
    fold_vs_direct(ctx, 4, 120)
}

fn b9(ctx: &Context) -> Result<Residual> {
    fold_vs_direct(ctx, 5, 10)
}

/// t(2) = n delta.
fn b9a(ctx: &Context) -> Result<Residual> {
    let t2 = ctx.t(2)?;
    let nf = ctx.n() as f64;
    let mut found = 0.0f64;
    t2.for_each(|idx, v| {
        let want = if idx[0] == idx[1] { nf } else { 0.0 };
        found = found.max((v - want).abs());
    });
    Ok(vanish(found, nf))
}

/// t(3) = n^2/3 d.
fn b10(ctx: &Context) -> Result<Residual> {
    let t3 = ctx.t(3)?;
    let d3 = ctx.set().d3();
    let coef = (ctx.n() * ctx.n()) as f64 / 3.0;
    let abs = t3
        .values()
        .iter()
        .zip(d3.values())
        .map(|(t, d)| (t - coef * d).abs())
        .fold(0.0f64, f64::max);
    Ok(vanish(abs, t3.max_abs().max(coef * d3.max_abs()).max(1.0)))
}

/// t(4) = (n(n^2+1) d4 - 2(n^2-4) delta delta) / 15; all tensors share the
/// canonical multiset layout, so this is a straight triple zip.
fn b11(ctx: &Context) -> Result<Residual> {
    let t4 = ctx.t(4)?;
    let d4 = ctx.set().d(4)?;
    let dd4 = ctx.deltadelta4();
    let n2 = (ctx.n() * ctx.n()) as f64;
    let (ca, cb) = (ctx.n() as f64 * (n2 + 1.0) / 15.0, 2.0 * (n2 - 4.0) / 15.0);
    let mut abs = 0.0f64;
    let mut scale = 1.0f64;
    for ((t, d), e) in t4.values().iter().zip(d4.values()).zip(dd4.values()) {
        let want = ca * d - cb * e;
        abs = abs.max((t - want).abs());
        scale = scale.max(t.abs().max(want.abs()));
    }
    Ok(vanish(abs, scale))
}

/// t(5) = n/105 (n(n^2+5) d5 - 2(3n^2-20) d delta); same layout argument.
fn b12(ctx: &Context) -> Result<Residual> {
    let t5 = ctx.t(5)?;
    let d5 = ctx.set().d(5)?;
    let dd5 = ctx.ddelta5();
    let n2 = (ctx.n() * ctx.n()) as f64;
    let lam = closed::lambda_t5(ctx.n());
    let (ca, cb) = (
        lam * ctx.n() as f64 * (n2 + 5.0),
        lam * 2.0 * (3.0 * n2 - 20.0),
    );
    let mut abs = 0.0f64;
    let mut scale = 1.0f64;
    for ((t, d), e) in t5.values().iter().zip(d5.values()).zip(dd5.values()) {
        let want = ca * d - cb * e;
        abs = abs.max((t - want).abs());
        scale = scale.max(t.abs().max(want.abs()));
    }
    Ok(vanish(abs, scale))
}

/// The order-5 coefficient recovered by least squares from the measured
/// t(5): only meaningful once t(5) is nonzero, so n >= 5.
fn b12a(ctx: &Context) -> Result<Residual> {
    let t5 = ctx.t(5)?;
    let d5 = ctx.set().d(5)?;
    let dd5 = ctx.ddelta5();
    let (coef, rel) = fit_lambda_coefficient(t5, d5, dd5, ctx.n())?;
    Ok(worst(
        scalar(coef, closed::lambda_t5(ctx.n())),
        vanish(rel, 1.0),
    ))
}

/// Orthogonality of t(4) to lower orders: against delta and against t(3).
fn b13(ctx: &Context) -> Result<Residual> {
    let dim = ctx.dim();
    let t4 = ctx.t(4)?;
    let t3 = ctx.t(3)?;
    let scale = t4.max_abs().max(1.0) * dim as f64;
    let mut found = 0.0f64;
    for k in 0..dim {
        for l in k..dim {
            let mut acc = 0.0;
            for i in 0..dim {
                acc += t4.get(&[i, i, k, l]);
            }
            found = found.max(acc.abs());
        }
    }
    let mut res = vanish(found, scale);
    // full contraction of t(3) into t(4), one free index
    let mut found = 0.0f64;
    for l in 0..dim {
        let mut acc = 0.0;
        let mut m3 = [0usize; 3];
        loop {
            let t3v = t3.get_sorted(&m3);
            if t3v != 0.0 {
                acc += perm_count(&m3) * t3v * t4.get(&[m3[0], m3[1], m3[2], l]);
            }
            if !next_multiset(&mut m3, dim) {
                break;
            }
        }
        found = found.max(acc.abs());
    }
    res = worst(res, vanish(found, t4.max_abs().max(1.0) * t3.max_abs().max(1.0)));
    Ok(res)
}

/// Two-index contraction of t(4) with t(3) stays in the t-family:
/// equal to n^2/3 times the same contraction with d, and to a fixed
/// multiple of t(3).
fn b14a(ctx: &Context) -> Result<Residual> {
    let dim = ctx.dim();
    let t4 = ctx.t(4)?;
    let t3 = ctx.t(3)?;
    let d = ctx.set().d_dense();
    let n2 = (ctx.n() * ctx.n()) as f64;
    let c_mid = n2 / 3.0;
    let c_end = 2.0 / 45.0 * n2 * (n2 - 9.0);
    let mut rng = ctx.rng("B14A");
    let exhaustive = ctx.n() <= 4;
    let cap = if exhaustive { usize::MAX } else { 2500 };
    let mut triples = Vec::new();
    if exhaustive {
        for k in 0..dim {
            for l in k..dim {
                for m in 0..dim {
                    triples.push([k, l, m]);
                }
            }
        }
    } else {
        for _ in 0..cap {
            triples.push([
                rng.gen_range(0..dim),
                rng.gen_range(0..dim),
                rng.gen_range(0..dim),
            ]);
        }
    }
    let mut found = 0.0f64;
    let mut scale = 1.0f64;
    for [k, l, m] in triples {
        let mut with_t3 = 0.0;
        let mut with_d = 0.0;
        for i in 0..dim {
            for j in 0..dim {
                let tv = t4.get(&[i, j, k, l]);
                if tv != 0.0 {
                    with_t3 += tv * t3.get(&[i, j, m]);
                    with_d += tv * d.get(i, j, m);
                }
            }
        }
        let end = c_end * t3.get(&[k, l, m]);
        found = found.max((with_t3 - c_mid * with_d).abs());
        found = found.max((with_t3 - end).abs());
        scale = scale.max(with_t3.abs().max(end.abs()));
    }
    Ok(vanish(found, scale))
}

/// Orthogonality of t(5) to every lower order: delta, t(3) and t(4).
fn b15(ctx: &Context) -> Result<Residual> {
    let dim = ctx.dim();
    let t5 = ctx.t(5)?;
    let t4 = ctx.t(4)?;
    let t3 = ctx.t(3)?;
    let mut found = 0.0f64;
    // delta: free (k, l, m)
    let mut m3 = [0usize; 3];
    loop {
        let mut acc = 0.0;
        for i in 0..dim {
            acc += t5.get(&[i, i, m3[0], m3[1], m3[2]]);
        }
        found = found.max(acc.abs());
        if !next_multiset(&mut m3, dim) {
            break;
        }
    }
    let mut res = vanish(found, t5.max_abs().max(1.0) * dim as f64);
    // t(3): free (l, m)
    let mut found = 0.0f64;
    for l in 0..dim {
        for m in l..dim {
            let mut acc = 0.0;
            let mut t = [0usize; 3];
            loop {
                let t3v = t3.get_sorted(&t);
                if t3v != 0.0 {
                    acc += perm_count(&t) * t3v * t5.get(&[t[0], t[1], t[2], l, m]);
                }
                if !next_multiset(&mut t, dim) {
                    break;
                }
            }
            found = found.max(acc.abs());
        }
    }
    res = worst(
        res,
        vanish(found, t5.max_abs().max(1.0) * t3.max_abs().max(1.0)),
    );
    // t(4): free m
    let mut found = 0.0f64;
    for m in 0..dim {
        let mut acc = 0.0;
        let mut t = [0usize; 4];
        loop {
            let t4v = t4.get_sorted(&t);
            if t4v != 0.0 {
                acc += perm_count(&t) * t4v * t5.get(&[t[0], t[1], t[2], t[3], m]);
            }
            if !next_multiset(&mut t, dim) {
                break;
            }
        }
        found = found.max(acc.abs());
    }
    res = worst(
        res,
        vanish(found, t5.max_abs().max(1.0) * t4.max_abs().max(1.0)),
    );
    Ok(res)
}

/// Stored t-tensors of order m > n are zero; lower orders give the scale.
fn collapse(ctx: &Context) -> Result<Residual> {
    let n = ctx.n();
    let mut found = 0.0f64;
    let mut scale = 1.0f64;
    for m in 2..=ctx.max_m().min(5) {
        let t = ctx.t(m)?;
        if m > n {
            found = found.max(t.max_abs());
        } else {
            scale = scale.max(t.max_abs());
        }
    }
    Ok(vanish(found, scale))
}

pub fn defs() -> Vec<CheckDef> {
    vec![
        CheckDef {
            id: "B10",
            eq: "(B10)",
            group: Group::TFam,
            cost: Cost::Cheap,
            max_m: 3,
            applicable: always,
            tol: None,
            run: Some(b10),
            note: "order-3 t-tensor closed form in d",
        },
        CheckDef {
            id: "B11",
            eq: "(B11)",
            group: Group::TFam,
            cost: Cost::Cheap,
            max_m: 4,
            applicable: always,
            tol: None,
            run: Some(b11),
            note: "order-4 t-tensor closed form in d4 and delta",
        },
        CheckDef {
            id: "B12",
            eq: "(B12)",
            group: Group::TFam,
            cost: Cost::Heavy,
            max_m: 5,
            applicable: always,
            tol: None,
            run: Some(b12),
            note: "order-5 t-tensor closed form in d5 and d-delta",
        },
        CheckDef {
            id: "B12A",
            eq: "(B12A)",
            group: Group::TFam,
            cost: Cost::Heavy,
            max_m: 5,
            applicable: ge5,
            tol: Some(1e-8),
            run: Some(b12a),
            note: "order-5 coefficient n/105 recovered by least squares",
        },
        CheckDef {
            id: "B13",
            eq: "(B13)",
            group: Group::TFam,
            cost: Cost::Moderate,
            max_m: 4,
            applicable: always,
            tol: None,
            run: Some(b13),
            note: "t(4) is orthogonal to delta and to t(3)",
        },
        CheckDef {
            id: "B14A",
            eq: "(B14A)",
            group: Group::TFam,
            cost: Cost::Moderate,
            max_m: 4,
            applicable: always,
            tol: None,
            run: Some(b14a),
            note: "two-index t(4) t(3) contraction stays in the t-family",
        },
        CheckDef {
            id: "B15",
            eq: "(B15)",
            group: Group::TFam,
            cost: Cost::Heavy,
            max_m: 5,
            applicable: always,
            tol: None,
            run: Some(b15),
            note: "t(5) is orthogonal to delta, t(3) and t(4)",
        },
        CheckDef {
            id: "B6A",
            eq: "(B6A)",
            group: Group::TFam,
            cost: Cost::Cheap,
            max_m: 2,
            applicable: always,
            tol: None,
            run: Some(b6a),
            note: "order-2 fold against direct contraction, all components",
        },
        CheckDef {
            id: "B7",
            eq: "(B7)",
            group: Group::TFam,
            cost: Cost::Cheap,
            max_m: 3,
            applicable: always,
            tol: None,
            run: Some(b7),
            note: "order-3 fold against direct contraction",
        },
        CheckDef {
            id: "B8",
            eq: "(B8)",
            group: Group::TFam,
            cost: Cost::Moderate,
            max_m: 4,
            applicable: always,
            tol: None,
            run: Some(b8),
            note: "order-4 fold against direct contraction",
        },
        CheckDef {
            id: "B9",
            eq: "(B9)",
            group: Group::TFam,
            cost: Cost::Heavy,
            max_m: 5,
            applicable: always,
            tol: None,
            run: Some(b9),
            note: "order-5 fold against direct contraction",
        },
        CheckDef {
            id: "B9A",
            eq: "(B9A)",
            group: Group::TFam,
            cost: Cost::Cheap,
            max_m: 2,
            applicable: always,
            tol: None,
            run: Some(b9a),
            note: "order-2 t-tensor is n times delta",
        },
        CheckDef {
            id: "TFAM.collapse",
            eq: "(B12A)",
            group: Group::TFam,
            cost: Cost::Moderate,
            max_m: 5,
            applicable: |n| n <= 4,
            tol: None,
            run: Some(collapse),
            note: "t-tensors of order m > n vanish identically",
        },
    ]
}
