//! Cocycle cross-route checks: the defining f...fd contraction, the
//! single-step recursion and the matrix-trace route must all agree, the
//! partially antisymmetrized definition must come out fully skew, and
//! orders past the algebra rank must collapse to zero.

use super::helpers::{
    always, bracket_alt, diff_antisym, eq4, sample_ascending, tail_row, vanish, worst,
};
use crate::error::Result;
use crate::invariants::{omega_definition_component, omega_trace, PairTable};
use crate::tensor::shuffle::shuffles;
use crate::tensor::SymTensor;
use crate::verify::{CheckDef, Context, Cost, Group, Residual};

/// f-pair chain closed against the symmetric order-m tensor, evaluated at
/// the written slot order: pairs from `w`, exempt trailing index `q`.
fn fchain_d(fp: &PairTable, dm: &SymTensor, w: &[usize], q: usize) -> f64 {
    fn walk(
        fp: &PairTable,
        dm: &SymTensor,
        w: &[usize],
        depth: usize,
        pairs: usize,
        labels: &mut [usize; 8],
        q: usize,
        coef: f64,
        out: &mut f64,
    ) {
        if depth == pairs {
            labels[pairs] = q;
            *out += coef * dm.get(&labels[..pairs + 1]);
            return;
        }
        for &(t, v) in fp.list(w[2 * depth], w[2 * depth + 1]) {
            labels[depth] = t as usize;
            walk(fp, dm, w, depth + 1, pairs, labels, q, coef * v, out);
        }
    }
    let mut labels = [0usize; 8];
    let mut out = 0.0;
    walk(fp, dm, w, 0, w.len() / 2, &mut labels, q, 1.0, &mut out);
    out
}

/// Trace route against the structure constants themselves.
fn c12(ctx: &Context) -> Result<Residual> {
    let (route, imag) = omega_trace(2, ctx.lam())?;
    Ok(worst(
        diff_antisym(&route, ctx.set().f()),
        vanish(imag, 1.0),
    ))
}

/// Order-5 cocycle against the trace route, every component.
fn b4(ctx: &Context) -> Result<Residual> {
    let w5 = ctx.omega(3)?;
    let (route, imag) = omega_trace(3, ctx.lam())?;
    Ok(worst(diff_antisym(&route, w5), vanish(imag, 1.0)))
}

/// Order-7 cocycle: recursion-built tensor against the full trace route
/// and against sampled components of the defining contraction.
fn b5(ctx: &Context) -> Result<Residual> {
    let w7 = ctx.omega(4)?;
    let (route, imag) = omega_trace(4, ctx.lam())?;
    let mut res = worst(diff_antisym(&route, w7), vanish(imag, 1.0));
    let set = ctx.set();
    let d4 = set.d(4)?;
    let fp = set.f_pairs();
    let mut rng = ctx.rng("B5");
    let mut found = 0.0f64;
    for t in sample_ascending(&mut rng, ctx.dim(), 7, 1500) {
        let def = omega_definition_component(fp, d4, &t);
        found = found.max((def - w7.get_ascending(&t)).abs());
    }
    res = worst(res, vanish(found, w7.max_abs().max(1.0)));
    Ok(res)
}

/// Order-9 cocycle: recursion-built tensor against sampled components of
/// the defining contraction. The trace route is covered separately.
fn b5a(ctx: &Context) -> Result<Residual> {
    let w9 = ctx.omega(5)?;
    let set = ctx.set();
    let d5 = set.d(5)?;
    let fp = set.f_pairs();
    let mut rng = ctx.rng("B5A");
    let mut found = 0.0f64;
    for t in sample_ascending(&mut rng, ctx.dim(), 9, 30) {
        let def = omega_definition_component(fp, d5, &t);
        found = found.max((def - w9.get_ascending(&t)).abs());
    }
    Ok(vanish(found, w9.max_abs().max(1.0)))
}

/// The order-11 trace route vanishes identically at n = 4, where the
/// cocycle ladder has already collapsed.
fn b6(ctx: &Context) -> Result<Residual> {
    let (route, imag) = omega_trace(6, ctx.lam())?;
    Ok(worst(vanish(route.max_abs(), 1.0), vanish(imag, 1.0)))
}

/// Stored cocycles of order 2m-1 with m > n are zero tensors; the survivors
/// supply the scale so the check cannot pass on an all-zero build.
fn collapse(ctx: &Context) -> Result<Residual> {
    let n = ctx.n();
    let mut found = 0.0f64;
    let mut scale = 1.0f64;
    for m in 2..=ctx.max_m() {
        let w = ctx.omega(m)?;
        if m > n {
            found = found.max(w.max_abs());
        } else {
            scale = scale.max(w.max_abs());
        }
    }
    Ok(vanish(found, scale))
}

/// The defining contraction antisymmetrizes only 2m-2 indices explicitly,
/// yet the result is skew in the exempt index too: evaluating the partial
/// bracket with each tuple element exempted reproduces the stored fully
/// antisymmetric tensor with the parity of the move.
fn skew(ctx: &Context, m: usize, cap: usize) -> Result<Residual> {
    let set = ctx.set();
    let w = ctx.omega(m)?;
    let dm = set.d(m)?;
    let fp = set.f_pairs();
    let dim = ctx.dim();
    let order = 2 * m - 1;
    let reps = shuffles(order - 1, &[(2, m - 1)]);
    let mut rng = ctx.rng(&format!("SKEW.m{m}"));
    let mut found = 0.0f64;
    let mut rest = vec![0usize; order - 1];
    for t in sample_ascending(&mut rng, dim, order, cap) {
        let stored = w.get_ascending(&t);
        for p in 0..order {
            let mut at = 0;
            for (s, &v) in t.iter().enumerate() {
                if s != p {
                    rest[at] = v;
                    at += 1;
                }
            }
            let q = t[p];
            let partial = bracket_alt(&reps, &rest, |wn| fchain_d(fp, dm, wn, q));
            let sgn = if p % 2 == 0 { 1.0 } else { -1.0 };
            found = found.max((partial - sgn * stored).abs());
        }
    }
    Ok(vanish(found, w.max_abs().max(1.0)))
}

fn skew_m3(ctx: &Context) -> Result<Residual> {
    skew(ctx, 3, 4000)
}

fn skew_m4(ctx: &Context) -> Result<Residual> {
    skew(ctx, 4, 400)
}

fn skew_m5(ctx: &Context) -> Result<Residual> {
    skew(ctx, 5, 12)
}

/// Single-step recursion kernel written out directly: the order-(2m-1)
/// cocycle as a bracket of the order-(2m-3) one against one f-pair and one
/// d-vertex, independent of the production recursion code path.
fn recursion_kernel(ctx: &Context, m: usize, cap: usize) -> Result<Residual> {
    let dim = ctx.dim();
    let w = ctx.omega(m)?;
    let low = if m == 4 { ctx.a5()? } else { ctx.a7()? };
    let fp = ctx.set().f_pairs();
    let d = ctx.set().d_dense();
    let order = 2 * m - 1;
    let reps = shuffles(order, &[(order - 3, 1), (2, 1), (1, 1)]);
    let mut rng = ctx.rng(if m == 4 { "C10" } else { "C11" });
    let mut found = 0.0f64;
    for t in sample_ascending(&mut rng, dim, order, cap) {
        let stored = w.get_ascending(&t);
        let got = bracket_alt(&reps, &t, |wn| {
            let Some((row, rs)) = tail_row(low, dim, &wn[..order - 3]) else {
                return 0.0;
            };
            let q = wn[order - 1];
            let mut acc = 0.0;
            for &(s, vf) in fp.list(wn[order - 3], wn[order - 2]) {
                let mut inner = 0.0;
                for (tt, rv) in row.iter().enumerate() {
                    if *rv != 0.0 {
                        inner += rv * d.get(q, s as usize, tt);
                    }
                }
                acc += vf * inner;
            }
            rs * acc
        });
        found = found.max((got - stored).abs());
    }
    Ok(vanish(found, w.max_abs().max(1.0)))
}

fn c10(ctx: &Context) -> Result<Residual> {
    recursion_kernel(ctx, 4, 3000)
}

fn c11(ctx: &Context) -> Result<Residual> {
    recursion_kernel(ctx, 5, 1200)
}

/// Alternative order-7 kernel with the f-pair leading: f_{x[ij}
/// W5_{klmp}^y d_{q]xy} rebuilds the same tensor.
fn c10a(ctx: &Context) -> Result<Residual> {
    let dim = ctx.dim();
    let w7 = ctx.omega(4)?;
    let a5 = ctx.a5()?;
    let fp = ctx.set().f_pairs();
    let d = ctx.set().d_dense();
    let reps = shuffles(7, &[(2, 1), (4, 1), (1, 1)]);
    let mut rng = ctx.rng("C10A");
    let mut found = 0.0f64;
    for t in sample_ascending(&mut rng, dim, 7, 3000) {
        let stored = w7.get_ascending(&t);
        let got = bracket_alt(&reps, &t, |wn| {
            let Some((row, rs)) = tail_row(a5, dim, &wn[2..6]) else {
                return 0.0;
            };
            let mut acc = 0.0;
            for &(x, vf) in fp.list(wn[0], wn[1]) {
                let mut inner = 0.0;
                for (y, rv) in row.iter().enumerate() {
                    if *rv != 0.0 {
                        inner += rv * d.get(wn[6], x as usize, y);
                    }
                }
                acc += vf * inner;
            }
            rs * acc
        });
        found = found.max((got - stored).abs());
    }
    Ok(vanish(found, w7.max_abs().max(1.0)))
}

/// Alternative order-9 kernel from two order-5 blocks sharing a d-vertex.
fn c11a(ctx: &Context) -> Result<Residual> {
    let dim = ctx.dim();
    let w9 = ctx.omega(5)?;
    let a5 = ctx.a5()?;
    let d = ctx.set().d_dense();
    let reps = shuffles(9, &[(4, 2), (1, 1)]);
    let mut rng = ctx.rng("C11A");
    let mut found = 0.0f64;
    for t in sample_ascending(&mut rng, dim, 9, 250) {
        let stored = w9.get_ascending(&t);
        let got = bracket_alt(&reps, &t, |wn| {
            let Some((ra, sa)) = tail_row(a5, dim, &wn[..4]) else {
                return 0.0;
            };
            let Some((rb, sb)) = tail_row(a5, dim, &wn[4..8]) else {
                return 0.0;
            };
            let mut acc = 0.0;
            for (x, va) in ra.iter().enumerate() {
                if *va == 0.0 {
                    continue;
                }
                for (y, vb) in rb.iter().enumerate() {
                    if *vb != 0.0 {
                        acc += va * vb * d.get(wn[8], x, y);
                    }
                }
            }
            sa * sb * acc
        });
        found = found.max((got - stored).abs());
    }
    Ok(vanish(found, w9.max_abs().max(1.0)))
}

/// Replacing the closing d-vertex of the leading-f order-7 kernel with an
/// f-vertex kills the bracket.
fn frepl_m4(ctx: &Context) -> Result<Residual> {
    let dim = ctx.dim();
    let a5 = ctx.a5()?;
    let fp = ctx.set().f_pairs();
    let f = ctx.set().f_dense();
    let reps = shuffles(7, &[(2, 1), (4, 1), (1, 1)]);
    let mut rng = ctx.rng("FREPL.m4");
    let mut found = 0.0f64;
    let mut mass = 0.0f64;
    for t in sample_ascending(&mut rng, dim, 7, 3000) {
        let mut m = 0.0;
        let got = bracket_alt(&reps, &t, |wn| {
            let Some((row, rs)) = tail_row(a5, dim, &wn[2..6]) else {
                return 0.0;
            };
            let mut acc = 0.0;
            for &(x, vf) in fp.list(wn[0], wn[1]) {
                for (y, rv) in row.iter().enumerate() {
                    if *rv != 0.0 {
                        let term = vf * rv * f.get(wn[6], x as usize, y);
                        acc += term;
                        m += term.abs();
                    }
                }
            }
            rs * acc
        });
        found = found.max(got.abs());
        mass = mass.max(m / reps.len() as f64);
    }
    Ok(vanish(found, mass))
}

/// Same replacement in the two-block order-9 kernel.
fn frepl_m5(ctx: &Context) -> Result<Residual> {
    let dim = ctx.dim();
    let a5 = ctx.a5()?;
    let f = ctx.set().f_dense();
    let reps = shuffles(9, &[(4, 2), (1, 1)]);
    let mut rng = ctx.rng("FREPL.m5");
    let mut found = 0.0f64;
    let mut mass = 0.0f64;
    for t in sample_ascending(&mut rng, dim, 9, 300) {
        let mut m = 0.0;
        let got = bracket_alt(&reps, &t, |wn| {
            let Some((ra, sa)) = tail_row(a5, dim, &wn[..4]) else {
                return 0.0;
            };
            let Some((rb, sb)) = tail_row(a5, dim, &wn[4..8]) else {
                return 0.0;
            };
            let mut acc = 0.0;
            for (x, va) in ra.iter().enumerate() {
                if *va == 0.0 {
                    continue;
                }
                for (y, vb) in rb.iter().enumerate() {
                    if *vb != 0.0 {
                        let term = va * vb * f.get(wn[8], x, y);
                        acc += term;
                        m += term.abs();
                    }
                }
            }
            sa * sb * acc
        });
        found = found.max(got.abs());
        mass = mass.max(m / reps.len() as f64);
    }
    Ok(vanish(found, mass))
}

pub fn defs() -> Vec<CheckDef> {
    vec![
        CheckDef {
            id: "B4",
            eq: "(B4)",
            group: Group::Omega,
            cost: Cost::Cheap,
            max_m: 3,
            applicable: always,
            tol: None,
            run: Some(b4),
            note: "order-5 cocycle against the full trace route",
        },
        CheckDef {
            id: "B5",
            eq: "(B5)",
            group: Group::Omega,
            cost: Cost::Moderate,
            max_m: 4,
            applicable: always,
            tol: None,
            run: Some(b5),
            note: "order-7 recursion build against trace route and sampled definition",
        },
        CheckDef {
            id: "B5A",
            eq: "(B5A)",
            group: Group::Omega,
            cost: Cost::Heavy,
            max_m: 5,
            applicable: always,
            tol: None,
            run: Some(b5a),
            note: "order-9 recursion build against sampled definition components",
        },
        CheckDef {
            id: "B6",
            eq: "(B6)",
            group: Group::Omega,
            cost: Cost::Moderate,
            max_m: 2,
            applicable: eq4,
            tol: None,
            run: Some(b6),
            note: "order-11 trace route vanishes at n = 4",
        },
        CheckDef {
            id: "C10",
            eq: "(C10)",
            group: Group::Omega,
            cost: Cost::Moderate,
            max_m: 4,
            applicable: always,
            tol: None,
            run: Some(c10),
            note: "order-7 single-step kernel written out, cocycle block leading",
        },
        CheckDef {
            id: "C10A",
            eq: "(C10A)",
            group: Group::Omega,
            cost: Cost::Moderate,
            max_m: 4,
            applicable: always,
            tol: None,
            run: Some(c10a),
            note: "order-7 single-step kernel with the f-pair leading",
        },
        CheckDef {
            id: "C11",
            eq: "(C11)",
            group: Group::Omega,
            cost: Cost::Heavy,
            max_m: 5,
            applicable: always,
            tol: None,
            run: Some(c11),
            note: "order-9 single-step kernel written out",
        },
        CheckDef {
            id: "C11A",
            eq: "(C11A)",
            group: Group::Omega,
            cost: Cost::Heavy,
            max_m: 5,
            applicable: always,
            tol: None,
            run: Some(c11a),
            note: "order-9 kernel from two order-5 blocks on a shared d-vertex",
        },
        CheckDef {
            id: "C12",
            eq: "(C12)",
            group: Group::Omega,
            cost: Cost::Cheap,
            max_m: 2,
            applicable: always,
            tol: None,
            run: Some(c12),
            note: "order-3 trace route reproduces the structure constants",
        },
        CheckDef {
            id: "FREPL.m4",
            eq: "(C10A)",
            group: Group::Omega,
            cost: Cost::Moderate,
            max_m: 3,
            applicable: always,
            tol: None,
            run: Some(frepl_m4),
            note: "f-for-d replacement in the order-7 kernel vanishes",
        },
        CheckDef {
            id: "FREPL.m5",
            eq: "(C11A)",
            group: Group::Omega,
            cost: Cost::Moderate,
            max_m: 3,
            applicable: always,
            tol: None,
            run: Some(frepl_m5),
            note: "f-for-d replacement in the order-9 kernel vanishes",
        },
        CheckDef {
            id: "OMEGA.collapse",
            eq: "(S14)",
            group: Group::Omega,
            cost: Cost::Cheap,
            max_m: 5,
            applicable: |n| n <= 4,
            tol: None,
            run: Some(collapse),
            note: "cocycles of order 2m-1 with m > n vanish identically",
        },
        CheckDef {
            id: "SKEW.m3",
            eq: "(B4)",
            group: Group::Omega,
            cost: Cost::Cheap,
            max_m: 3,
            applicable: always,
            tol: None,
            run: Some(skew_m3),
            note: "partial-bracket definition of the order-5 cocycle is fully skew",
        },
        CheckDef {
            id: "SKEW.m4",
            eq: "(B5)",
            group: Group::Omega,
            cost: Cost::Moderate,
            max_m: 4,
            applicable: always,
            tol: None,
            run: Some(skew_m4),
            note: "partial-bracket definition of the order-7 cocycle is fully skew",
        },
        CheckDef {
            id: "SKEW.m5",
            eq: "(B5A)",
            group: Group::Omega,
            cost: Cost::Heavy,
            max_m: 5,
            applicable: always,
            tol: None,
            run: Some(skew_m5),
            note: "partial-bracket definition of the order-9 cocycle is fully skew",
        },
    ]
}
