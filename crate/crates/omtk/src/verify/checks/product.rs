//! Product identities: cocycle self-contractions down to two free indices
//! (proportional to delta), down to two free pairs (a delta-delta plus f-f
//! decomposition), and the trace conditions pinning those coefficients.

use super::helpers::{always, ge4, scalar, vanish, worst};
use crate::error::Result;
use crate::invariants::{closed, fit_in_span};
use crate::tensor::rank::{binomial, front_sign, next_combination, rank_ascending, unrank_ascending};
use crate::verify::{CheckDef, Context, Cost, Group, Residual};

/// Accumulate `fact * row^T row` over all rows of a tail table.
fn outer_gram(table: &[f64], dim: usize, fact: f64) -> Vec<f64> {
    let rows = table.len() / dim;
    let mut gram = vec![0.0; dim * dim];
    let mut nz: Vec<(usize, f64)> = Vec::with_capacity(dim);
    for r in 0..rows {
        let row = &table[r * dim..(r + 1) * dim];
        nz.clear();
        for (s, &v) in row.iter().enumerate() {
            if v != 0.0 {
                nz.push((s, v));
            }
        }
        for (ai, &(a, va)) in nz.iter().enumerate() {
            for &(b, vb) in &nz[ai..] {
                gram[a * dim + b] += fact * va * vb;
            }
        }
    }
    for a in 0..dim {
        for b in 0..a {
            gram[a * dim + b] = gram[b * dim + a];
        }
    }
    gram
}

/// Gram against phi * identity, plus the trace against psi.
fn gram_vs_delta(gram: &[f64], dim: usize, phi: f64, psi: f64) -> Residual {
    let mut found = 0.0f64;
    let mut trace = 0.0;
    for a in 0..dim {
        for b in 0..dim {
            let want = if a == b { phi } else { 0.0 };
            found = found.max((gram[a * dim + b] - want).abs());
        }
        trace += gram[a * dim + a];
    }
    worst(
        vanish(found, phi.abs().max(1.0)),
        scalar(trace, psi),
    )
}

fn c18(ctx: &Context) -> Result<Residual> {
    let dim = ctx.dim();
    let f = ctx.set().f();
    let rows = ctx.f_rows();
    let mut gram = vec![0.0; dim * dim];
    for a in 0..dim {
        for b in a..dim {
            let mut acc = 0.0;
            for &(i, j, v) in &rows[a] {
                acc += 2.0 * v * f.get(&[i as usize, j as usize, b]);
            }
            gram[a * dim + b] = acc;
            gram[b * dim + a] = acc;
        }
    }
    Ok(gram_vs_delta(
        &gram,
        dim,
        closed::phi(ctx.n(), 3),
        closed::psi(ctx.n(), 3),
    ))
}

fn c19(ctx: &Context) -> Result<Residual> {
    let dim = ctx.dim();
    let gram = outer_gram(ctx.a5()?, dim, 24.0);
    Ok(gram_vs_delta(
        &gram,
        dim,
        closed::phi(ctx.n(), 5),
        closed::psi(ctx.n(), 5),
    ))
}

fn c20(ctx: &Context) -> Result<Residual> {
    let dim = ctx.dim();
    let gram = outer_gram(ctx.a7()?, dim, 720.0);
    Ok(gram_vs_delta(
        &gram,
        dim,
        closed::phi(ctx.n(), 7),
        closed::psi(ctx.n(), 7),
    ))
}

/// f-f pairing over the trailing index, flat over ascending pairs.
fn ff_pair_matrix(ctx: &Context) -> Vec<f64> {
    let dim = ctx.dim();
    let fp = ctx.set().f_pairs();
    let fd = ctx.set().f_dense();
    let pairs = binomial(dim, 2) as usize;
    let mut ff = vec![0.0; pairs * pairs];
    let mut pi = [0usize; 2];
    let mut qi = [0usize; 2];
    for p in 0..pairs {
        unrank_ascending(p, 2, &mut pi);
        for q in p..pairs {
            unrank_ascending(q, 2, &mut qi);
            let mut acc = 0.0;
            for &(x, v) in fp.list(pi[0], pi[1]) {
                acc += v * fd.get(qi[0], qi[1], x as usize);
            }
            ff[p * pairs + q] = acc;
            ff[q * pairs + p] = acc;
        }
    }
    ff
}

/// Pair-block gram against `b * ff + a * (delta delta - delta delta)`; on
/// ascending pairs the antisymmetrized delta product is the identity.
fn pair_gram_vs_coeffs(gram: &[f64], ff: &[f64], pairs: usize, a: f64, b: f64) -> Residual {
    let mut found = 0.0f64;
    let mut scale = 1.0f64;
    for p in 0..pairs {
        for q in 0..pairs {
            let want = b * ff[p * pairs + q] + if p == q { a } else { 0.0 };
            let got = gram[p * pairs + q];
            found = found.max((got - want).abs());
            scale = scale.max(got.abs().max(want.abs()));
        }
    }
    vanish(found, scale)
}

/// Three-common self-contraction of the order-5 cocycle, built from a
/// kept-block table and compared to its two-term decomposition.
fn c28(ctx: &Context) -> Result<Residual> {
    let dim = ctx.dim();
    let w5 = ctx.omega(3)?;
    let pairs = binomial(dim, 2) as usize;
    let rows3 = binomial(dim, 3) as usize;
    let mut table = vec![0.0; rows3 * pairs];
    let mut picks = Vec::new();
    let mut pos = [0usize, 1, 2];
    loop {
        picks.push((pos, front_sign(&pos)));
        if !next_combination(&mut pos, 5) {
            break;
        }
    }
    w5.for_each(|t, v| {
        if v == 0.0 {
            return;
        }
        let mut kept = [0usize; 3];
        let mut rest = [0usize; 2];
        for (pos, sign) in &picks {
            let mut ka = 0;
            let mut ra = 0;
            for (i, &x) in t.iter().enumerate() {
                if ka < 3 && pos[ka] == i {
                    kept[ka] = x;
                    ka += 1;
                } else {
                    rest[ra] = x;
                    ra += 1;
                }
            }
            table[rank_ascending(&kept) * pairs + rank_ascending(&rest)] = sign * v;
        }
    });
    let gram = outer_gram(&table, pairs, 6.0);
    let ff = ff_pair_matrix(ctx);
    let (a, b) = closed::omega5_pair_coeffs(ctx.n());
    Ok(pair_gram_vs_coeffs(&gram, &ff, pairs, a, b))
}

/// Five-common self-contraction of the order-7 cocycle against its
/// decomposition.
fn c29(ctx: &Context) -> Result<Residual> {
    let pairs = binomial(ctx.dim(), 2) as usize;
    let gram = ctx.w7_pair_gram()?;
    let ff = ff_pair_matrix(ctx);
    let (a, b) = closed::omega7_pair_coeffs(ctx.n());
    Ok(pair_gram_vs_coeffs(gram, &ff, pairs, a, b))
}

/// Least-squares coefficients (a, b) of the order-7 pair gram in the span
/// of the identity and the f-f pairing, with the fit residual.
fn fitted_pair_coeffs(ctx: &Context) -> Result<(f64, f64, f64)> {
    let pairs = binomial(ctx.dim(), 2) as usize;
    let gram = ctx.w7_pair_gram()?;
    let ff = ff_pair_matrix(ctx);
    let pf = pairs as f64;
    let mut ff_tr = 0.0;
    let mut ff_ff = 0.0;
    let mut g_id = 0.0;
    let mut g_ff = 0.0;
    let mut g_g = 0.0;
    for p in 0..pairs {
        ff_tr += ff[p * pairs + p];
        g_id += gram[p * pairs + p];
        for q in 0..pairs {
            ff_ff += ff[p * pairs + q] * ff[p * pairs + q];
            g_ff += gram[p * pairs + q] * ff[p * pairs + q];
            g_g += gram[p * pairs + q] * gram[p * pairs + q];
        }
    }
    let (c, rel) = fit_in_span(&[pf, ff_tr, ff_tr, ff_ff], &[g_id, g_ff], g_g)?;
    Ok((c[0], c[1], rel))
}

/// First trace condition on the fitted pair coefficients.
fn d3(ctx: &Context) -> Result<Residual> {
    let (a, b, rel) = fitted_pair_coeffs(ctx)?;
    let n2 = (ctx.n() * ctx.n()) as f64;
    Ok(worst(
        scalar((n2 - 2.0) * a + ctx.n() as f64 * b, closed::phi(ctx.n(), 7)),
        vanish(rel, 1.0),
    ))
}

/// Second trace condition on the fitted pair coefficients.
fn d4(ctx: &Context) -> Result<Residual> {
    let (a, b, rel) = fitted_pair_coeffs(ctx)?;
    Ok(worst(
        scalar(2.0 * a + ctx.n() as f64 * b, closed::phi(ctx.n(), 7) / 3.0),
        vanish(rel, 1.0),
    ))
}

pub fn defs() -> Vec<CheckDef> {
    vec![
        CheckDef {
            id: "C18",
            eq: "(C18)",
            group: Group::Product,
            cost: Cost::Cheap,
            max_m: 2,
            applicable: always,
            tol: None,
            run: Some(c18),
            note: "f self-pairing over two indices is phi(3) delta",
        },
        CheckDef {
            id: "C19",
            eq: "(C19)",
            group: Group::Product,
            cost: Cost::Moderate,
            max_m: 3,
            applicable: always,
            tol: None,
            run: Some(c19),
            note: "order-5 self-pairing over four indices is phi(5) delta",
        },
        CheckDef {
            id: "C20",
            eq: "(C20)",
            group: Group::Product,
            cost: Cost::Moderate,
            max_m: 4,
            applicable: always,
            tol: None,
            run: Some(c20),
            note: "order-7 self-pairing over six indices is phi(7) delta",
        },
        CheckDef {
            id: "C28",
            eq: "(C28)",
            group: Group::Product,
            cost: Cost::Moderate,
            max_m: 3,
            applicable: always,
            tol: None,
            run: Some(c28),
            note: "three-common order-5 self-contraction decomposes over ff and deltas",
        },
        CheckDef {
            id: "C29",
            eq: "(C29)",
            group: Group::Product,
            cost: Cost::Moderate,
            max_m: 4,
            applicable: always,
            tol: None,
            run: Some(c29),
            note: "five-common order-7 self-contraction decomposes over ff and deltas",
        },
        CheckDef {
            id: "D3",
            eq: "(D3)",
            group: Group::Product,
            cost: Cost::Moderate,
            max_m: 4,
            applicable: ge4,
            tol: None,
            run: Some(d3),
            note: "fitted pair coefficients satisfy the full trace condition",
        },
        CheckDef {
            id: "D4",
            eq: "(D4)",
            group: Group::Product,
            cost: Cost::Moderate,
            max_m: 4,
            applicable: ge4,
            tol: None,
            run: Some(d4),
            note: "fitted pair coefficients satisfy the ff trace condition",
        },
    ]
}
