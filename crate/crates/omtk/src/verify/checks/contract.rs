//! Contractions across tensor families: cocycles against structure
//! constants, cocycles of neighbouring orders against each other, and the
//! mixed scalar that ties the order-7 square to the order-5 route.

use rand::Rng;

use super::helpers::{always, bracket_alt, sample_multisets, scalar, tail_row, vanish};
use super::tfam::t_direct;
use crate::error::Result;
use crate::tensor::rank::{binomial, front_sign, next_combination, rank_ascending};
use crate::tensor::shuffle::shuffles;
use crate::tensor::{full_contract, AntisymTensor};
use crate::verify::{CheckDef, Context, Cost, Group, Residual};

/// f gram over two common indices equals n delta, and equals t(2).
fn c13(ctx: &Context) -> Result<Residual> {
    let dim = ctx.dim();
    let f = ctx.set().f();
    let t2 = ctx.t(2)?;
    let rows = ctx.f_rows();
    let nf = ctx.n() as f64;
    let mut found = 0.0f64;
    for a in 0..dim {
        for b in a..dim {
            let mut acc = 0.0;
            for &(i, j, v) in &rows[a] {
                acc += 2.0 * v * f.get(&[i as usize, j as usize, b]);
            }
            let want = if a == b { nf } else { 0.0 };
            found = found.max((acc - want).abs());
            found = found.max((acc - t2.get(&[a, b])).abs());
        }
    }
    Ok(vanish(found, nf))
}

/// Order-5 cocycle against one f: a single antisymmetrized f-d product.
fn c14(ctx: &Context) -> Result<Residual> {
    let dim = ctx.dim();
    let w5 = ctx.omega(3)?;
    let fp = ctx.set().f_pairs();
    let d = ctx.set().d_dense();
    let rows = ctx.f_rows();
    let coef = 0.5 * ctx.n() as f64;
    let reps = shuffles(3, &[(2, 1), (1, 1)]);
    let mut found = 0.0f64;
    let mut scale = 1.0f64;
    let mut tri = [0usize, 1, 2];
    loop {
        let (t, k, l) = (tri[0], tri[1], tri[2]);
        for s in 0..dim {
            let mut lhs = 0.0;
            for &(i, j, v) in &rows[s] {
                lhs += 2.0 * v * w5.get(&[t, i as usize, j as usize, k, l]);
            }
            let rhs = coef
                * bracket_alt(&reps, &[k, l, t], |w| {
                    let mut acc = 0.0;
                    for &(u, vf) in fp.list(w[0], w[1]) {
                        acc += vf * d.get(w[2], u as usize, s);
                    }
                    acc
                });
            found = found.max((lhs - rhs).abs());
            scale = scale.max(lhs.abs().max(rhs.abs()));
        }
        if !next_combination(&mut tri, dim) {
            break;
        }
    }
    Ok(vanish(found, scale))
}

/// Order-5 cocycle against two f's lands on the d tensor and on t(3).
fn c15(ctx: &Context) -> Result<Residual> {
    let dim = ctx.dim();
    let w5 = ctx.omega(3)?;
    let t3 = ctx.t(3)?;
    let d3 = ctx.set().d3();
    let rows = ctx.f_rows();
    let coef = (ctx.n() * ctx.n()) as f64 / 3.0;
    let mut rng = ctx.rng("C15");
    let mut triples = Vec::new();
    if ctx.n() <= 4 {
        for a in 0..dim {
            for b in a..dim {
                for c in 0..dim {
                    triples.push([a, b, c]);
                }
            }
        }
    } else {
        for _ in 0..1500 {
            triples.push([
                rng.gen_range(0..dim),
                rng.gen_range(0..dim),
                rng.gen_range(0..dim),
            ]);
        }
    }
    let mut found = 0.0f64;
    let mut scale = 1.0f64;
    for [a, b, c] in triples {
        let lhs = t_direct(w5, rows, &[a, b], c);
        let want = coef * d3.get(&[a, b, c]);
        found = found.max((lhs - want).abs());
        found = found.max((lhs - t3.get(&[a, b, c])).abs());
        scale = scale.max(lhs.abs().max(want.abs()));
    }
    Ok(vanish(found, scale))
}

/// Order-7 cocycle against three f's reproduces the order-4 t closed form.
fn c16(ctx: &Context) -> Result<Residual> {
    let dim = ctx.dim();
    let w7 = ctx.omega(4)?;
    let d4 = ctx.set().d(4)?;
    let dd4 = ctx.deltadelta4();
    let rows = ctx.f_rows();
    let n2 = (ctx.n() * ctx.n()) as f64;
    let (ca, cb) = (ctx.n() as f64 * (n2 + 1.0) / 15.0, 2.0 * (n2 - 4.0) / 15.0);
    let mut rng = ctx.rng("C16");
    let cap = if ctx.n() <= 4 { 100 } else { 60 };
    let mut found = 0.0f64;
    let mut scale = 1.0f64;
    for tuple in sample_multisets(&mut rng, dim, 4, cap) {
        let lhs = t_direct(w7, rows, &tuple[..3], tuple[3]);
        let want = ca * d4.get_sorted(&tuple) - cb * dd4.get_sorted(&tuple);
        found = found.max((lhs - want).abs());
        scale = scale.max(lhs.abs().max(want.abs()));
    }
    Ok(vanish(found, scale))
}

/// Streamed contraction of an odd cocycle with f over three indices; the
/// result has one entry per ascending free subset and must vanish for
/// every order. Returns the worst entry and the input scale.
fn f_three_contraction(w: &AntisymTensor, f: &AntisymTensor) -> Residual {
    let dim = w.dim();
    let q = w.order();
    let rest_len = q - 3;
    let mut out = vec![0.0f64; binomial(dim, rest_len) as usize];
    let mut picks = Vec::new();
    let mut pos = [0usize, 1, 2];
    loop {
        picks.push((pos, front_sign(&pos)));
        if !next_combination(&mut pos, q) {
            break;
        }
    }
    let mut kept = [0usize; 3];
    let mut rest = vec![0usize; rest_len];
    w.for_each(|t, v| {
        if v == 0.0 {
            return;
        }
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
            let fv = f.get_ascending(&kept);
            if fv != 0.0 {
                out[rank_ascending(&rest)] += 6.0 * sign * v * fv;
            }
        }
    });
    let found = out.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    vanish(found, w.max_abs() * f.max_abs() * binomial(dim, 3) as f64)
}

fn c17(ctx: &Context) -> Result<Residual> {
    let w5 = ctx.omega(3)?;
    Ok(f_three_contraction(w5, ctx.set().f()))
}

fn k5(ctx: &Context) -> Result<Residual> {
    let w7 = ctx.omega(4)?;
    Ok(f_three_contraction(w7, ctx.set().f()))
}

fn k6(ctx: &Context) -> Result<Residual> {
    let w9 = ctx.omega(5)?;
    Ok(f_three_contraction(w9, ctx.set().f()))
}

/// Neighbour-order cocycle contraction over all but three indices equals a
/// fixed multiple of the antisymmetrized f-d product.
fn neighbour_fd(ctx: &Context, table: &[f64], coef: f64) -> Residual {
    let dim = ctx.dim();
    let fp = ctx.set().f_pairs();
    let d = ctx.set().d_dense();
    let reps = shuffles(3, &[(2, 1), (1, 1)]);
    let mut found = 0.0f64;
    let mut scale = 1.0f64;
    let mut tri = [0usize, 1, 2];
    loop {
        let row = &table[rank_ascending(&tri) * dim..rank_ascending(&tri) * dim + dim];
        for s in 0..dim {
            let rhs = coef
                * bracket_alt(&reps, &tri, |w| {
                    let mut acc = 0.0;
                    for &(u, vf) in fp.list(w[0], w[1]) {
                        acc += vf * d.get(w[2], u as usize, s);
                    }
                    acc
                });
            found = found.max((row[s] - rhs).abs());
            scale = scale.max(row[s].abs().max(rhs.abs()));
        }
        if !next_combination(&mut tri, dim) {
            break;
        }
    }
    vanish(found, scale)
}

fn k1(ctx: &Context) -> Result<Residual> {
    let nf = ctx.n() as f64;
    let coef = nf / 15.0 * (nf * nf - 9.0);
    let table = ctx.w5w7_common4()?;
    Ok(neighbour_fd(ctx, table, coef))
}

fn k1a(ctx: &Context) -> Result<Residual> {
    let nf = ctx.n() as f64;
    let coef = 2.0 * nf / 105.0 * (nf * nf - 9.0) * (nf * nf - 16.0);
    let table = ctx.w7w9_common6()?;
    Ok(neighbour_fd(ctx, table, coef))
}

/// Closing the neighbour contraction with one more f lands back on d.
fn neighbour_fd_closed(ctx: &Context, table: &[f64], coef: f64) -> Residual {
    let dim = ctx.dim();
    let d = ctx.set().d_dense();
    let rows = ctx.f_rows();
    let mut found = 0.0f64;
    let mut scale = 1.0f64;
    for t in 0..dim {
        for r in 0..dim {
            for s in 0..dim {
                let mut acc = 0.0;
                for &(p, q, v) in &rows[t] {
                    if let Some((row, sg)) = tail_row(table, dim, &[p as usize, q as usize, r]) {
                        acc += 2.0 * v * sg * row[s];
                    }
                }
                let want = coef * d.get(r, s, t);
                found = found.max((acc - want).abs());
                scale = scale.max(acc.abs().max(want.abs()));
            }
        }
    }
    vanish(found, scale)
}

fn k2(ctx: &Context) -> Result<Residual> {
    let n2 = (ctx.n() * ctx.n()) as f64;
    let coef = 2.0 / 45.0 * n2 * (n2 - 9.0);
    let table = ctx.w5w7_common4()?;
    Ok(neighbour_fd_closed(ctx, table, coef))
}

fn k2a(ctx: &Context) -> Result<Residual> {
    let n2 = (ctx.n() * ctx.n()) as f64;
    let coef = 4.0 / 315.0 * n2 * (n2 - 9.0) * (n2 - 16.0);
    let table = ctx.w7w9_common6()?;
    Ok(neighbour_fd_closed(ctx, table, coef))
}

/// The four-common contraction of the order-5 and order-7 cocycles is
/// proportional to the two-common contraction of f with the order-5 one.
fn k3(ctx: &Context) -> Result<Residual> {
    let dim = ctx.dim();
    let w5 = ctx.omega(3)?;
    let table = ctx.w5w7_common4()?;
    let rows = ctx.f_rows();
    let nf = ctx.n() as f64;
    let coef = 2.0 / 15.0 * (nf * nf - 9.0);
    let mut found = 0.0f64;
    let mut scale = 1.0f64;
    let mut tri = [0usize, 1, 2];
    loop {
        let row = &table[rank_ascending(&tri) * dim..rank_ascending(&tri) * dim + dim];
        for s in 0..dim {
            let mut rhs = 0.0;
            for &(i, j, v) in &rows[s] {
                rhs += 2.0 * v * w5.get(&[i as usize, j as usize, tri[0], tri[1], tri[2]]);
            }
            rhs *= coef;
            found = found.max((row[s] - rhs).abs());
            scale = scale.max(row[s].abs().max(rhs.abs()));
        }
        if !next_combination(&mut tri, dim) {
            break;
        }
    }
    Ok(vanish(found, scale))
}

/// One more common index kills the neighbour contraction entirely.
fn five_common_vanishes(ctx: &Context, table: &[f64]) -> Residual {
    let dim = ctx.dim();
    let tmax = table.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let mut found = 0.0f64;
    for q in 0..dim {
        for r in q + 1..dim {
            let mut acc = 0.0;
            for p in 0..dim {
                if let Some((row, sg)) = tail_row(table, dim, &[p, q, r]) {
                    acc += sg * row[p];
                }
            }
            found = found.max(acc.abs());
        }
    }
    vanish(found, tmax * dim as f64)
}

fn k4(ctx: &Context) -> Result<Residual> {
    let table = ctx.w5w7_common4()?;
    Ok(five_common_vanishes(ctx, table))
}

fn k4a(ctx: &Context) -> Result<Residual> {
    let table = ctx.w7w9_common6()?;
    Ok(five_common_vanishes(ctx, table))
}

/// Mixed scalar: order-7 cocycle, one d vertex, one f vertex and an
/// order-5 cocycle close into the square of the order-7 cocycle.
fn t1(ctx: &Context) -> Result<Residual> {
    let dim = ctx.dim();
    let w7 = ctx.omega(4)?;
    let table = ctx.w5w7_common4()?;
    let fp = ctx.set().f_pairs();
    let d = ctx.set().d_dense();
    // sum_x d_{j a x} f_{b c x}
    let df = |j: usize, a: usize, b: usize, c: usize| {
        let mut acc = 0.0;
        for &(x, v) in fp.list(b, c) {
            acc += v * d.get(j, a, x as usize);
        }
        acc
    };
    let mut lhs = 0.0;
    let mut tri = [0usize, 1, 2];
    loop {
        let row = &table[rank_ascending(&tri) * dim..rank_ascending(&tri) * dim + dim];
        let (t, r, s) = (tri[0], tri[1], tri[2]);
        for (j, &rv) in row.iter().enumerate() {
            if rv != 0.0 {
                lhs += rv
                    * 2.0
                    * (df(j, t, r, s) - df(j, r, t, s) + df(j, s, t, r));
            }
        }
        if !next_combination(&mut tri, dim) {
            break;
        }
    }
    Ok(scalar(lhs, full_contract(w7, w7)))
}

pub fn defs() -> Vec<CheckDef> {
    vec![
        CheckDef {
            id: "C13",
            eq: "(C13)",
            group: Group::Contract,
            cost: Cost::Cheap,
            max_m: 2,
            applicable: always,
            tol: None,
            run: Some(c13),
            note: "f gram over two indices equals n delta and t(2)",
        },
        CheckDef {
            id: "C14",
            eq: "(C14)",
            group: Group::Contract,
            cost: Cost::Moderate,
            max_m: 3,
            applicable: always,
            tol: None,
            run: Some(c14),
            note: "order-5 cocycle with one f as an antisymmetrized f-d product",
        },
        CheckDef {
            id: "C15",
            eq: "(C15)",
            group: Group::Contract,
            cost: Cost::Moderate,
            max_m: 3,
            applicable: always,
            tol: None,
            run: Some(c15),
            note: "order-5 cocycle with two f's lands on d and t(3)",
        },
        CheckDef {
            id: "C16",
            eq: "(C16)",
            group: Group::Contract,
            cost: Cost::Moderate,
            max_m: 4,
            applicable: always,
            tol: None,
            run: Some(c16),
            note: "order-7 cocycle with three f's gives the order-4 t closed form",
        },
        CheckDef {
            id: "C17",
            eq: "(C17)",
            group: Group::Contract,
            cost: Cost::Cheap,
            max_m: 3,
            applicable: always,
            tol: None,
            run: Some(c17),
            note: "order-5 cocycle contracted with f over three indices vanishes",
        },
        CheckDef {
            id: "K1",
            eq: "(K1)",
            group: Group::Contract,
            cost: Cost::Moderate,
            max_m: 4,
            applicable: always,
            tol: None,
            run: Some(k1),
            note: "four-common order-5/order-7 contraction closed form",
        },
        CheckDef {
            id: "K1A",
            eq: "(K1A)",
            group: Group::Contract,
            cost: Cost::Heavy,
            max_m: 5,
            applicable: always,
            tol: None,
            run: Some(k1a),
            note: "six-common order-7/order-9 contraction closed form",
        },
        CheckDef {
            id: "K2",
            eq: "(K2)",
            group: Group::Contract,
            cost: Cost::Moderate,
            max_m: 4,
            applicable: always,
            tol: None,
            run: Some(k2),
            note: "four-common contraction closed with one f lands on d",
        },
        CheckDef {
            id: "K2A",
            eq: "(K2A)",
            group: Group::Contract,
            cost: Cost::Heavy,
            max_m: 5,
            applicable: always,
            tol: None,
            run: Some(k2a),
            note: "six-common contraction closed with one f lands on d",
        },
        CheckDef {
            id: "K3",
            eq: "(K3)",
            group: Group::Contract,
            cost: Cost::Moderate,
            max_m: 4,
            applicable: always,
            tol: None,
            run: Some(k3),
            note: "four-common contraction proportional to the f-cocycle pairing",
        },
        CheckDef {
            id: "K4",
            eq: "(K4)",
            group: Group::Contract,
            cost: Cost::Moderate,
            max_m: 4,
            applicable: always,
            tol: None,
            run: Some(k4),
            note: "five-common order-5/order-7 contraction vanishes",
        },
        CheckDef {
            id: "K4A",
            eq: "(K4A)",
            group: Group::Contract,
            cost: Cost::Heavy,
            max_m: 5,
            applicable: always,
            tol: None,
            run: Some(k4a),
            note: "seven-common order-7/order-9 contraction vanishes",
        },
        CheckDef {
            id: "K5",
            eq: "(K5)",
            group: Group::Contract,
            cost: Cost::Moderate,
            max_m: 4,
            applicable: always,
            tol: None,
            run: Some(k5),
            note: "order-7 cocycle contracted with f over three indices vanishes",
        },
        CheckDef {
            id: "K6",
            eq: "(K6)",
            group: Group::Contract,
            cost: Cost::Heavy,
            max_m: 5,
            applicable: always,
            tol: None,
            run: Some(k6),
            note: "order-9 cocycle contracted with f over three indices vanishes",
        },
        CheckDef {
            id: "K6A",
            eq: "(K6A)",
            group: Group::Contract,
            cost: Cost::Cheap,
            max_m: 6,
            applicable: always,
            tol: None,
            run: None,
            note: "analytic only: order-11 against order-5 cocycle needs n >= 6",
        },
        CheckDef {
            id: "K7",
            eq: "(K7)",
            group: Group::Contract,
            cost: Cost::Cheap,
            max_m: 6,
            applicable: always,
            tol: None,
            run: None,
            note: "analytic only: order-11 cocycle against f needs n >= 6",
        },
        CheckDef {
            id: "T1",
            eq: "(T1)",
            group: Group::Contract,
            cost: Cost::Moderate,
            max_m: 4,
            applicable: always,
            tol: None,
            run: Some(t1),
            note: "mixed d-f bridge between cocycle orders equals the order-7 square",
        },
        CheckDef {
            id: "X101",
            eq: "(X101)",
            group: Group::Contract,
            cost: Cost::Cheap,
            max_m: 6,
            applicable: always,
            tol: None,
            run: None,
            note: "analytic only: order-11 cocycle against f, proof-section form",
        },
        CheckDef {
            id: "X102",
            eq: "(X102)",
            group: Group::Contract,
            cost: Cost::Cheap,
            max_m: 8,
            applicable: always,
            tol: None,
            run: None,
            note: "analytic only: order-15 cocycle against f needs n >= 8",
        },
    ]
}
