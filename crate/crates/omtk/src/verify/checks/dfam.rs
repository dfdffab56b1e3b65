//! The symmetric d-family: chain route against brute-force symmetrization,
//! exempt-index decompositions, the triple-vertex order-6 variant, and the
//! closed-form d contractions.

use rand::Rng;

use super::helpers::{always, bracket_sym, permutations, sample_multisets, vanish, worst};
use crate::error::Result;
use crate::invariants::{closed, PairTable};
use crate::tensor::shuffle::shuffles;
use crate::verify::{CheckDef, Context, Cost, Group, Residual};

/// Raw chain d_{i0 i1 x} d_{x i2 y} ... d_{z i_{r-2} i_{r-1}} with all the
/// link indices summed. No symmetrization: this is the order the factors
/// are written in.
fn chain(dp: &PairTable, dim: usize, idx: &[usize]) -> f64 {
    let r = idx.len();
    debug_assert!(r >= 4);
    let mut cur = vec![0.0f64; dim];
    for &(x, v) in dp.list(idx[0], idx[1]) {
        cur[x as usize] = v;
    }
    for &mid in &idx[2..r - 2] {
        let mut next = vec![0.0f64; dim];
        for (x, &c) in cur.iter().enumerate() {
            if c != 0.0 {
                for &(y, v) in dp.list(x, mid) {
                    next[y as usize] += c * v;
                }
            }
        }
        cur = next;
    }
    let mut acc = 0.0;
    for &(x, v) in dp.list(idx[r - 2], idx[r - 1]) {
        acc += cur[x as usize] * v;
    }
    acc
}

/// Family member == average of the raw chain over every permutation of its
/// indices. The stored route folds the exempt-index form back in, so this
/// brute-force average is an independent oracle.
fn b2(ctx: &Context) -> Result<Residual> {
    let set = ctx.set();
    let dim = ctx.dim();
    let dp = set.d_pairs();
    let mut rng = ctx.rng("B2");
    let mut res = Residual::new(0.0, 0.0);
    for (r, cap) in [(4usize, 400usize), (5, 200), (6, 80)] {
        let stored = set.d(r)?;
        let perms = permutations(r);
        let mut arranged = vec![0usize; r];
        for tuple in sample_multisets(&mut rng, dim, r, cap) {
            let mut avg = 0.0;
            for (p, _) in &perms {
                for (slot, &src) in p.iter().enumerate() {
                    arranged[slot] = tuple[src];
                }
                avg += chain(dp, dim, &arranged);
            }
            avg /= perms.len() as f64;
            let want = stored.get_sorted(&tuple);
            res = worst(
                res,
                Residual::new((avg - want).abs(), want.abs().max(avg.abs()).max(1.0)),
            );
        }
    }
    Ok(res)
}

/// Order-4 member as the three-pairing average of d-pair contractions,
/// checked on every canonical component.
fn b3(ctx: &Context) -> Result<Residual> {
    let set = ctx.set();
    let d4 = set.d(4)?;
    let dd = ctx.dd();
    let mut found = 0.0f64;
    d4.for_each(|idx, v| {
        let (i, j, k, l) = (idx[0], idx[1], idx[2], idx[3]);
        let rhs = (dd.get(i, j, k, l) + dd.get(j, k, i, l) + dd.get(k, i, j, l)) / 3.0;
        found = found.max((v - rhs).abs());
    });
    Ok(vanish(found, d4.max_abs().max(1.0)))
}

/// d_{t(ij} f_{k)st} = 0: symmetrize three indices against one free index.
fn y1(ctx: &Context) -> Result<Residual> {
    let set = ctx.set();
    let dim = ctx.dim();
    let dp = set.d_pairs();
    let f = set.f_dense();
    let reps = shuffles(3, &[(2, 1), (1, 1)]);
    let mut found = 0.0f64;
    let mut mass = 0.0f64;
    for i in 0..dim {
        for j in i..dim {
            for k in j..dim {
                for s in 0..dim {
                    let mut m = 0.0;
                    let v = bracket_sym(&reps, &[i, j, k], |w| {
                        let mut acc = 0.0;
                        for &(t, dv) in dp.list(w[0], w[1]) {
                            let term = dv * f.get(w[2], s, t as usize);
                            acc += term;
                            m += term.abs();
                        }
                        acc
                    });
                    found = found.max(v.abs());
                    mass = mass.max(m / reps.len() as f64);
                }
            }
        }
    }
    Ok(vanish(found, mass))
}

/// Same cancellation one order up: d4_{t(ijk} f_{l)st} = 0.
fn y2(ctx: &Context) -> Result<Residual> {
    let set = ctx.set();
    let dim = ctx.dim();
    let d4 = set.d(4)?;
    let f = set.f_dense();
    let reps = shuffles(4, &[(3, 1), (1, 1)]);
    let mut rng = ctx.rng("Y2");
    let tuples = sample_multisets(&mut rng, dim, 4, if ctx.n() >= 5 { 3000 } else { 4000 });
    let mut found = 0.0f64;
    let mut mass = 0.0f64;
    let mut idx4 = [0usize; 4];
    for tuple in &tuples {
        let s_list: Vec<usize> = if ctx.n() >= 5 {
            (0..8).map(|_| rng.gen_range(0..dim)).collect()
        } else {
            (0..dim).collect()
        };
        for &s in &s_list {
            let mut m = 0.0;
            let v = bracket_sym(&reps, tuple, |w| {
                let mut acc = 0.0;
                for t in 0..dim {
                    idx4 = [t, w[0], w[1], w[2]];
                    let dv = d4.get(&idx4);
                    if dv != 0.0 {
                        let term = dv * f.get(w[3], s, t);
                        acc += term;
                        m += term.abs();
                    }
                }
                acc
            });
            found = found.max(v.abs());
            mass = mass.max(m / reps.len() as f64);
        }
    }
    Ok(vanish(found, mass))
}

/// And again for the order-5 member: d5_{t(ijkl} f_{m)st} = 0.
fn y3(ctx: &Context) -> Result<Residual> {
    let set = ctx.set();
    let dim = ctx.dim();
    let d5 = set.d(5)?;
    let f = set.f_dense();
    let reps = shuffles(5, &[(4, 1), (1, 1)]);
    let mut rng = ctx.rng("Y3");
    let tuples = sample_multisets(&mut rng, dim, 5, 1200);
    let mut found = 0.0f64;
    let mut mass = 0.0f64;
    let mut idx5 = [0usize; 5];
    for tuple in &tuples {
        let s_list: Vec<usize> = if ctx.n() >= 4 {
            (0..6).map(|_| rng.gen_range(0..dim)).collect()
        } else {
            (0..dim).collect()
        };
        for &s in &s_list {
            let mut m = 0.0;
            let v = bracket_sym(&reps, tuple, |w| {
                let mut acc = 0.0;
                for t in 0..dim {
                    idx5 = [t, w[0], w[1], w[2], w[3]];
                    let dv = d5.get(&idx5);
                    if dv != 0.0 {
                        let term = dv * f.get(w[4], s, t);
                        acc += term;
                        m += term.abs();
                    }
                }
                acc
            });
            found = found.max(v.abs());
            mass = mass.max(m / reps.len() as f64);
        }
    }
    Ok(vanish(found, mass))
}

/// Exempting the trailing index of the order-4 member changes nothing:
/// d4_(abcq) == d4_(abc)q on every component.
fn y4(ctx: &Context) -> Result<Residual> {
    let set = ctx.set();
    let d4 = set.d(4)?;
    let le4 = set.d_le(4)?;
    let mut found = 0.0f64;
    d4.for_each(|idx, v| {
        for p in 0..4 {
            if p > 0 && idx[p] == idx[p - 1] {
                continue;
            }
            let mut rest = [0usize; 3];
            let mut at = 0;
            for (t, &val) in idx.iter().enumerate() {
                if t != p {
                    rest[at] = val;
                    at += 1;
                }
            }
            found = found.max((v - le4[idx[p]].get_sorted(&rest)).abs());
        }
    });
    Ok(vanish(found, d4.max_abs().max(1.0)))
}

/// At order 5 the exempt forms split: full symmetrization is 1/5 of the
/// mid-exempt chain plus 4/5 of the last-exempt one.
fn y4a(ctx: &Context) -> Result<Residual> {
    let set = ctx.set();
    let d5 = set.d(5)?;
    let le5 = set.d_le(5)?;
    let me5 = ctx.me5();
    let mut found = 0.0f64;
    d5.for_each(|idx, v| {
        for p in 0..5 {
            if p > 0 && idx[p] == idx[p - 1] {
                continue;
            }
            let mut rest = [0usize; 4];
            let mut at = 0;
            for (t, &val) in idx.iter().enumerate() {
                if t != p {
                    rest[at] = val;
                    at += 1;
                }
            }
            let q = idx[p];
            let rhs = 0.2 * me5[q].get_sorted(&rest) + 0.8 * le5[q].get_sorted(&rest);
            found = found.max((v - rhs).abs());
        }
    });
    Ok(vanish(found, d5.max_abs().max(1.0)))
}

/// Order-6 split: 1/3 mid-exempt plus 2/3 last-exempt.
fn y8(ctx: &Context) -> Result<Residual> {
    let set = ctx.set();
    let d6 = set.d(6)?;
    let le6 = set.d_le(6)?;
    let me6 = ctx.me6();
    let mut found = 0.0f64;
    d6.for_each(|idx, v| {
        for p in 0..6 {
            if p > 0 && idx[p] == idx[p - 1] {
                continue;
            }
            let mut rest = [0usize; 5];
            let mut at = 0;
            for (t, &val) in idx.iter().enumerate() {
                if t != p {
                    rest[at] = val;
                    at += 1;
                }
            }
            let q = idx[p];
            let rhs = me6[q].get_sorted(&rest) / 3.0 + 2.0 / 3.0 * le6[q].get_sorted(&rest);
            found = found.max((v - rhs).abs());
        }
    });
    Ok(vanish(found, d6.max_abs().max(1.0)))
}

/// Triple-vertex order-6 tensor: stored coset-average route against the
/// brute 720-permutation average of the raw product.
fn y9(ctx: &Context) -> Result<Residual> {
    let set = ctx.set();
    let dim = ctx.dim();
    let dp = set.d_pairs();
    let dd3 = set.d_dense();
    let d6p = ctx.d6_prime();
    let mut rng = ctx.rng("Y9");
    let perms = permutations(6);
    let mut res = Residual::new(0.0, 0.0);
    let mut arranged = [0usize; 6];
    for tuple in sample_multisets(&mut rng, dim, 6, 150) {
        let mut avg = 0.0;
        for (p, _) in &perms {
            for (slot, &src) in p.iter().enumerate() {
                arranged[slot] = tuple[src];
            }
            let mut raw = 0.0;
            for &(x, vx) in dp.list(arranged[0], arranged[1]) {
                for &(y, vy) in dp.list(arranged[2], arranged[3]) {
                    for &(z, vz) in dp.list(arranged[4], arranged[5]) {
                        raw += vx * vy * vz * dd3.get(x as usize, y as usize, z as usize);
                    }
                }
            }
            avg += raw;
        }
        avg /= perms.len() as f64;
        let want = d6p.get_sorted(&tuple);
        res = worst(
            res,
            Residual::new((avg - want).abs(), want.abs().max(avg.abs()).max(1.0)),
        );
    }
    Ok(res)
}

/// Exempting the trailing index of the triple-vertex tensor changes
/// nothing, mirroring the order-4 statement.
fn y10(ctx: &Context) -> Result<Residual> {
    let set = ctx.set();
    let dp = set.d_pairs();
    let dd3 = set.d_dense();
    let d6p = ctx.d6_prime();
    let dim = ctx.dim();
    let mut rng = ctx.rng("Y10");
    let reps = shuffles(5, &[(2, 2), (1, 1)]);
    let mut found = 0.0f64;
    for tuple in sample_multisets(&mut rng, dim, 6, 400) {
        let lhs = d6p.get_sorted(&tuple);
        for p in 0..6 {
            if p > 0 && tuple[p] == tuple[p - 1] {
                continue;
            }
            let mut rest = [0usize; 5];
            let mut at = 0;
            for (t, &val) in tuple.iter().enumerate() {
                if t != p {
                    rest[at] = val;
                    at += 1;
                }
            }
            let q = tuple[p];
            let rhs = bracket_sym(&reps, &rest, |w| {
                let mut raw = 0.0;
                for &(x, vx) in dp.list(w[0], w[1]) {
                    for &(y, vy) in dp.list(w[2], w[3]) {
                        for &(z, vz) in dp.list(w[4], q) {
                            raw += vx * vy * vz * dd3.get(x as usize, y as usize, z as usize);
                        }
                    }
                }
                raw
            });
            found = found.max((lhs - rhs).abs());
        }
    }
    Ok(vanish(found, d6p.max_abs().max(1.0)))
}

/// Shared harness for the two order-5 exempt decompositions, which differ
/// only in which exempt chain carries the delta corrections.
fn nn_split(ctx: &Context, mid: bool) -> Result<Residual> {
    let set = ctx.set();
    let dim = ctx.dim();
    let d5 = set.d(5)?;
    let le5 = set.d_le(5)?;
    let me5 = ctx.me5();
    let dd5 = ctx.ddelta5();
    let dd4le = ctx.ddelta4_le();
    let nf = ctx.n() as f64;
    let mut rng = ctx.rng(if mid { "NN9" } else { "NN7" });
    let mut found = 0.0f64;
    for tuple in sample_multisets(&mut rng, dim, 5, 5000) {
        let lhs = d5.get_sorted(&tuple);
        for p in 0..5 {
            if p > 0 && tuple[p] == tuple[p - 1] {
                continue;
            }
            let mut rest = [0usize; 4];
            let mut at = 0;
            for (t, &val) in tuple.iter().enumerate() {
                if t != p {
                    rest[at] = val;
                    at += 1;
                }
            }
            let e = tuple[p];
            let rhs = if mid {
                me5[e].get_sorted(&rest) - 4.0 / nf * dd5.get_sorted(&tuple)
                    + 4.0 / nf * dd4le[e].get_sorted(&rest)
            } else {
                le5[e].get_sorted(&rest) + dd5.get_sorted(&tuple) / nf
                    - dd4le[e].get_sorted(&rest) / nf
            };
            found = found.max((lhs - rhs).abs());
        }
    }
    Ok(vanish(found, d5.max_abs().max(1.0)))
}

fn nn7(ctx: &Context) -> Result<Residual> {
    nn_split(ctx, false)
}

fn nn9(ctx: &Context) -> Result<Residual> {
    nn_split(ctx, true)
}

/// Maximal d-d contraction: d_abc d_abd = ((n^2 - 4)/n) delta_cd.
fn dosd(ctx: &Context) -> Result<Residual> {
    let dim = ctx.dim();
    let d = ctx.set().d_dense();
    let want = closed::d_pair_contract(ctx.n());
    let mut found = 0.0f64;
    for c in 0..dim {
        for e in c..dim {
            let mut acc = 0.0;
            for a in 0..dim {
                for b in 0..dim {
                    acc += d.get(a, b, c) * d.get(a, b, e);
                }
            }
            let rhs = if c == e { want } else { 0.0 };
            found = found.max((acc - rhs).abs());
        }
    }
    Ok(vanish(found, want.max(1.0)))
}

/// One-pair contraction of the order-4 member with d:
/// d4_(ijkl) d_ijm = (2/3) (n^2 - 8)/n d_klm.
fn b14(ctx: &Context) -> Result<Residual> {
    let set = ctx.set();
    let dim = ctx.dim();
    let d4 = set.d(4)?;
    let d = set.d_dense();
    let n2 = (ctx.n() * ctx.n()) as f64;
    let coef = 2.0 / 3.0 * (n2 - 8.0) / ctx.n() as f64;
    let mut found = 0.0f64;
    let mut scale = 0.0f64;
    for k in 0..dim {
        for l in k..dim {
            for m in 0..dim {
                let mut acc = 0.0;
                for i in 0..dim {
                    for j in 0..dim {
                        let idx4 = [i, j, k, l];
                        let dv = d4.get(&idx4);
                        if dv != 0.0 {
                            acc += dv * d.get(i, j, m);
                        }
                    }
                }
                let rhs = coef * d.get(k, l, m);
                found = found.max((acc - rhs).abs());
                scale = scale.max(acc.abs().max(rhs.abs()));
            }
        }
    }
    Ok(vanish(found, scale.max(1.0)))
}

/// d4 against the symmetrized double delta:
/// d4_(abcr) delta_(ab delta_gp) = (2/9) (n^2 - 4)/n delta_gp delta_cr.
fn d7(ctx: &Context) -> Result<Residual> {
    let set = ctx.set();
    let dim = ctx.dim();
    let d4 = set.d(4)?;
    let dd4 = ctx.deltadelta4();
    let coef = 2.0 / 9.0 * closed::d_pair_contract(ctx.n());
    let mut rng = ctx.rng("D7");
    let mut found = 0.0f64;
    for _ in 0..400 {
        let c = rng.gen_range(0..dim);
        let r = rng.gen_range(0..dim);
        let g = rng.gen_range(0..dim);
        let p = rng.gen_range(0..dim);
        let mut acc = 0.0;
        for a in 0..dim {
            for b in 0..dim {
                let dv = d4.get(&[a, b, c, r]);
                if dv != 0.0 {
                    let idx = [a, b, g, p];
                    acc += dv * dd4.get(&idx);
                }
            }
        }
        let rhs = if g == p && c == r { coef } else { 0.0 };
        found = found.max((acc - rhs).abs());
    }
    Ok(vanish(found, coef.max(1.0)))
}

/// The longest quoted d4 contraction, two d vertices and one f:
/// f_cpq d4_(abcr) d_age d_bpe = (n^2-4)(n^2-8)/(9 n^2) f_qrg.
fn d8(ctx: &Context) -> Result<Residual> {
    let set = ctx.set();
    let dim = ctx.dim();
    let d4 = set.d(4)?;
    let dd = ctx.dd();
    let f = set.f_dense();
    let rows = ctx.f_rows();
    let n2 = (ctx.n() * ctx.n()) as f64;
    let coef = (n2 - 4.0) * (n2 - 8.0) / (9.0 * n2);
    let mut rng = ctx.rng("D8");
    let cap = if ctx.n() >= 5 { 60 } else { 200 };
    let mut found = 0.0f64;
    let mut scale = 0.0f64;
    let mut idx = [0usize; 4];
    let mut cross = |c: usize, p: usize, r: usize, g: usize| {
        // sum_ab d4_(abcr) dd(a, g, b, p), the X factor of the identity
        let mut acc = 0.0;
        for a in 0..dim {
            for b in 0..dim {
                idx = [a, b, c, r];
                let dv = d4.get(&idx);
                if dv != 0.0 {
                    acc += dv * dd.get(a, g, b, p);
                }
            }
        }
        acc
    };
    for _ in 0..cap {
        let q = rng.gen_range(0..dim);
        let r = rng.gen_range(0..dim);
        let g = rng.gen_range(0..dim);
        let mut acc = 0.0;
        for &(c, p, v) in &rows[q] {
            let (c, p) = (c as usize, p as usize);
            acc += v * (cross(c, p, r, g) - cross(p, c, r, g));
        }
        let rhs = coef * f.get(q, r, g);
        found = found.max((acc - rhs).abs());
        scale = scale.max(acc.abs().max(rhs.abs()));
    }
    Ok(vanish(found, scale.max(1.0)))
}

pub fn defs() -> Vec<CheckDef> {
    vec![
        CheckDef {
            id: "B14",
            eq: "(B14)",
            group: Group::DFam,
            cost: Cost::Moderate,
            max_m: 2,
            applicable: always,
            tol: None,
            run: Some(b14),
            note: "one-pair contraction of the order-4 member back onto d",
        },
        CheckDef {
            id: "B2",
            eq: "(B2)",
            group: Group::DFam,
            cost: Cost::Cheap,
            max_m: 2,
            applicable: always,
            tol: None,
            run: Some(b2),
            note: "stored members against the full permutation average of the raw chain",
        },
        CheckDef {
            id: "B3",
            eq: "(B3)",
            group: Group::DFam,
            cost: Cost::Cheap,
            max_m: 2,
            applicable: always,
            tol: None,
            run: Some(b3),
            note: "order-4 member as the three-pairing average, all components",
        },
        CheckDef {
            id: "D7",
            eq: "(D7)",
            group: Group::DFam,
            cost: Cost::Moderate,
            max_m: 2,
            applicable: always,
            tol: None,
            run: Some(d7),
            note: "order-4 member against the symmetrized double delta",
        },
        CheckDef {
            id: "D8",
            eq: "(D8)",
            group: Group::DFam,
            cost: Cost::Moderate,
            max_m: 2,
            applicable: always,
            tol: None,
            run: Some(d8),
            note: "f d4 d d contraction collapsing to a multiple of f",
        },
        CheckDef {
            id: "NN7",
            eq: "(NN7)",
            group: Group::DFam,
            cost: Cost::Cheap,
            max_m: 2,
            applicable: always,
            tol: None,
            run: Some(nn7),
            note: "order-5 member from the last-exempt chain and delta corrections",
        },
        CheckDef {
            id: "NN9",
            eq: "(NN9)",
            group: Group::DFam,
            cost: Cost::Cheap,
            max_m: 2,
            applicable: always,
            tol: None,
            run: Some(nn9),
            note: "order-5 member from the mid-exempt chain and delta corrections",
        },
        CheckDef {
            id: "Y1",
            eq: "(Y1)",
            group: Group::DFam,
            cost: Cost::Cheap,
            max_m: 2,
            applicable: always,
            tol: None,
            run: Some(y1),
            note: "invariance cancellation of d against f, three symmetrized indices",
        },
        CheckDef {
            id: "Y10",
            eq: "(Y10)",
            group: Group::DFam,
            cost: Cost::Moderate,
            max_m: 2,
            applicable: always,
            tol: None,
            run: Some(y10),
            note: "trailing exemption of the triple-vertex tensor is free",
        },
        CheckDef {
            id: "Y2",
            eq: "(Y2)",
            group: Group::DFam,
            cost: Cost::Moderate,
            max_m: 2,
            applicable: always,
            tol: None,
            run: Some(y2),
            note: "invariance cancellation of d4 against f",
        },
        CheckDef {
            id: "Y3",
            eq: "(Y3)",
            group: Group::DFam,
            cost: Cost::Moderate,
            max_m: 2,
            applicable: always,
            tol: None,
            run: Some(y3),
            note: "invariance cancellation of d5 against f",
        },
        CheckDef {
            id: "Y4",
            eq: "(Y4)",
            group: Group::DFam,
            cost: Cost::Cheap,
            max_m: 2,
            applicable: always,
            tol: None,
            run: Some(y4),
            note: "trailing exemption of the order-4 member is free, all components",
        },
        CheckDef {
            id: "Y4A",
            eq: "(Y4A)",
            group: Group::DFam,
            cost: Cost::Cheap,
            max_m: 2,
            applicable: always,
            tol: None,
            run: Some(y4a),
            note: "order-5 split into 1/5 mid-exempt and 4/5 last-exempt chains",
        },
        CheckDef {
            id: "Y8",
            eq: "(Y8)",
            group: Group::DFam,
            cost: Cost::Moderate,
            max_m: 2,
            applicable: always,
            tol: None,
            run: Some(y8),
            note: "order-6 split into 1/3 mid-exempt and 2/3 last-exempt chains",
        },
        CheckDef {
            id: "Y9",
            eq: "(Y9)",
            group: Group::DFam,
            cost: Cost::Moderate,
            max_m: 2,
            applicable: always,
            tol: None,
            run: Some(y9),
            note: "triple-vertex order-6 tensor against the brute permutation average",
        },
        CheckDef {
            id: "dosd",
            eq: "(dosd)",
            group: Group::DFam,
            cost: Cost::Cheap,
            max_m: 2,
            applicable: always,
            tol: None,
            run: Some(dosd),
            note: "maximal d-d contraction closed form",
        },
    ]
}
