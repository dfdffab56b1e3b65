//! Jacobi-type cancellations: the classical identity for f, its extensions
//! where one structure-constant pair is replaced by a higher cocycle, the
//! mixed variants with a free leading index, and the vanishing
//! antisymmetrized f-chains against symmetric invariant kernels.

use rand::Rng;

use super::helpers::{always, bracket_alt, sample_ascending, tail_row, vanish};
use crate::error::Result;
use crate::tensor::shuffle::shuffles;
use crate::tensor::MAX_ORDER;
use crate::verify::{CheckDef, Context, Cost, Group, Residual};

/// Running max of a cancellation alongside the mass it ran through.
#[derive(Default)]
struct Acc {
    found: f64,
    mass: f64,
}

impl Acc {
    fn push(&mut self, value: f64, mass: f64) {
        self.found = self.found.max(value.abs());
        self.mass = self.mass.max(mass);
    }
    fn residual(&self) -> Residual {
        vanish(self.found, self.mass)
    }
}

/// f_{t[ij} f_{k]lt} = 0: bracket over three indices, one free.
fn c2(ctx: &Context) -> Result<Residual> {
    let dim = ctx.dim();
    let f = ctx.set().f_dense();
    let fp = ctx.set().f_pairs();
    let reps = shuffles(3, &[(2, 1), (1, 1)]);
    let mut acc = Acc::default();
    let mut tuples: Vec<[usize; 3]> = Vec::new();
    for i in 0..dim {
        for j in i + 1..dim {
            for k in j + 1..dim {
                tuples.push([i, j, k]);
            }
        }
    }
    for t in &tuples {
        for l in 0..dim {
            let mut mass = 0.0;
            let b = bracket_alt(&reps, t, |w| {
                let mut s = 0.0;
                for &(tt, v) in fp.list(w[0], w[1]) {
                    let term = v * f.get(w[2], l, tt as usize);
                    s += term;
                    mass += term.abs();
                }
                s
            });
            acc.push(b, mass / reps.len() as f64);
        }
    }
    Ok(acc.residual())
}

/// Cocycle Jacobi extension: W^{(2m-1)}_{t[i1..i_{2m-2}} f_{p]qt} = 0,
/// bracket over 2m-1 indices with one free. `table` is the cocycle tail
/// table; tuples are the bracketed index sets to visit.
fn cocycle_jacobi(
    ctx: &Context,
    table: &[f64],
    order: usize,
    tuples: &[Vec<usize>],
) -> Residual {
    let dim = ctx.dim();
    let fp = ctx.set().f_pairs();
    let reps = shuffles(order, &[(order - 1, 1), (1, 1)]);
    let mut acc = Acc::default();
    for t in tuples {
        let mut sums = vec![0.0f64; dim];
        let mut mass = 0.0f64;
        for rep in &reps {
            let mut arranged = [0usize; MAX_ORDER];
            for (slot, &p) in rep.positions.iter().enumerate() {
                arranged[slot] = t[p];
            }
            let Some((row, rs)) = tail_row(table, dim, &arranged[..order - 1]) else {
                continue;
            };
            let w_last = arranged[order - 1];
            for q in 0..dim {
                for &(tt, v) in fp.list(w_last, q) {
                    let term = rep.sign * rs * v * row[tt as usize];
                    sums[q] += term;
                    mass = mass.max(term.abs());
                }
            }
        }
        let norm = reps.len() as f64;
        for q in 0..dim {
            acc.push(sums[q] / norm, mass);
        }
    }
    acc.residual()
}

fn all_ascending(dim: usize, order: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if order > dim {
        return out;
    }
    let mut t: Vec<usize> = (0..order).collect();
    loop {
        out.push(t.clone());
        if !crate::tensor::rank::next_combination(&mut t, dim) {
            break;
        }
    }
    out
}

fn c3(ctx: &Context) -> Result<Residual> {
    let tuples = all_ascending(ctx.dim(), 5);
    Ok(cocycle_jacobi(ctx, ctx.a5()?, 5, &tuples))
}

fn c4(ctx: &Context) -> Result<Residual> {
    let tuples = all_ascending(ctx.dim(), 7);
    Ok(cocycle_jacobi(ctx, ctx.a7()?, 7, &tuples))
}

fn c5(ctx: &Context) -> Result<Residual> {
    let a9 = ctx.a9()?;
    let mut rng = ctx.rng("C5");
    let tuples = sample_ascending(&mut rng, ctx.dim(), 9, 40_000);
    Ok(cocycle_jacobi(ctx, a9, 9, &tuples))
}

/// Mixed variant: W^{(2m-1)}_{t i [j.. } f_{..]t} = 0 with the cocycle's
/// second index free and the pair block inside the bracket.
fn mixed_jacobi(
    ctx: &Context,
    m: usize,
    tuples: &[(Vec<usize>, usize)],
) -> Result<Residual> {
    let dim = ctx.dim();
    let fp = ctx.set().f_pairs();
    let w = ctx.omega(m)?;
    let order = 2 * m - 1;
    debug_assert!(tuples.iter().all(|(t, i)| t.len() == order && *i < dim));
    let reps = shuffles(order, &[(order - 2, 1), (2, 1)]);
    let mut acc = Acc::default();
    let mut idx = [0usize; MAX_ORDER];
    for (t, i) in tuples {
        let mut mass = 0.0f64;
        let b = bracket_alt(&reps, t, |arr| {
            let mut s = 0.0;
            for &(tt, v) in fp.list(arr[order - 2], arr[order - 1]) {
                idx[0] = tt as usize;
                idx[1] = *i;
                idx[2..order].copy_from_slice(&arr[..order - 2]);
                let term = v * w.get(&idx[..order]);
                s += term;
                mass += term.abs();
            }
            s
        });
        acc.push(b, mass / reps.len() as f64);
    }
    Ok(acc.residual())
}

fn mixed_tuples(ctx: &Context, id: &str, order: usize, cap: usize) -> Vec<(Vec<usize>, usize)> {
    let dim = ctx.dim();
    let mut rng = ctx.rng(id);
    let mut out = Vec::new();
    for t in sample_ascending(&mut rng, dim, order, cap.max(1)) {
        for i in 0..dim {
            out.push((t.clone(), i));
        }
    }
    out
}

fn c3x(ctx: &Context) -> Result<Residual> {
    let cap = if ctx.n() >= 5 { 12_000 } else { 50_000 };
    let tuples = mixed_tuples(ctx, "MGJI.m2", 5, cap);
    mixed_jacobi(ctx, 3, &tuples)
}

fn c4x(ctx: &Context) -> Result<Residual> {
    let cap = if ctx.n() >= 5 { 2_000 } else { 50_000 };
    let tuples = mixed_tuples(ctx, "MGJI.m3", 7, cap);
    mixed_jacobi(ctx, 4, &tuples)
}

fn c5x(ctx: &Context) -> Result<Residual> {
    let cap = if ctx.n() >= 5 { 1_500 } else { 50_000 };
    let tuples = mixed_tuples(ctx, "MGJI.m4", 9, cap);
    mixed_jacobi(ctx, 5, &tuples)
}

/// Generalized Jacobi at order (3,3): W5_{t[ijkl} W5_{pqr]st} = 0.
fn c8(ctx: &Context) -> Result<Residual> {
    let dim = ctx.dim();
    let a5 = ctx.a5()?;
    let reps = shuffles(7, &[(4, 1), (3, 1)]);
    let mut rng = ctx.rng("C8");
    let cap = if ctx.n() >= 5 { 3_000 } else { 50_000 };
    let tuples = sample_ascending(&mut rng, dim, 7, cap);
    let mut acc = Acc::default();
    let mut second = [0usize; 4];
    for t in &tuples {
        let mut sums = vec![0.0f64; dim];
        let mut mass = 0.0f64;
        for rep in &reps {
            let mut arranged = [0usize; 7];
            for (slot, &p) in rep.positions.iter().enumerate() {
                arranged[slot] = t[p];
            }
            let Some((row1, s1)) = tail_row(a5, dim, &arranged[..4]) else {
                continue;
            };
            for s in 0..dim {
                second[..3].copy_from_slice(&arranged[4..7]);
                second[3] = s;
                let Some((row2, s2)) = tail_row(a5, dim, &second) else {
                    continue;
                };
                let mut dot = 0.0;
                let mut m = 0.0;
                for (x, y) in row1.iter().zip(row2) {
                    dot += x * y;
                    m += (x * y).abs();
                }
                sums[s] += rep.sign * s1 * s2 * dot;
                mass = mass.max(m);
            }
        }
        let norm = reps.len() as f64;
        for s in 0..dim {
            acc.push(sums[s] / norm, mass);
        }
    }
    Ok(acc.residual())
}

/// Vanishing antisymmetrized f-chain against a symmetric kernel: for every
/// bracketed tuple and free index q,
/// f^{a1}_[., .] ... f^{as}_[., last] k_(a1..as, q) = 0.
/// The kernel is passed as a closure over the contracted labels plus q.
fn f_chain_kernel(
    ctx: &Context,
    pairs: usize,
    tuples: &[(Vec<usize>, usize)],
    kernel: &dyn Fn(&[usize]) -> f64,
) -> Residual {
    let fp = ctx.set().f_pairs();
    let order = 2 * pairs;
    let reps = shuffles(order, &[(2, pairs)]);
    let mut acc = Acc::default();
    let mut labels = [0usize; MAX_ORDER];
    for (t, q) in tuples {
        let mut mass = 0.0f64;
        let b = bracket_alt(&reps, t, |arr| {
            // recursive walk over the f-lists of each pair
            fn walk(
                fp: &crate::invariants::PairTable,
                arr: &[usize],
                depth: usize,
                pairs: usize,
                coef: f64,
                labels: &mut [usize],
                q: usize,
                kernel: &dyn Fn(&[usize]) -> f64,
                mass: &mut f64,
                out: &mut f64,
            ) {
                if depth == pairs {
                    labels[pairs] = q;
                    let term = coef * kernel(&labels[..pairs + 1]);
                    *out += term;
                    *mass += term.abs();
                    return;
                }
                for &(a, v) in fp.list(arr[2 * depth], arr[2 * depth + 1]) {
                    labels[depth] = a as usize;
                    walk(fp, arr, depth + 1, pairs, coef * v, labels, q, kernel, mass, out);
                }
            }
            let mut out = 0.0;
            walk(fp, arr, 0, pairs, 1.0, &mut labels, *q, kernel, &mut mass, &mut out);
            out
        });
        acc.push(b, mass / reps.len() as f64);
    }
    acc.residual()
}

/// f^a_[ij f^b_kl f^c_p]q d_abc = 0: one bracketed single slot, so the
/// blocks are two exchangeable pairs plus a singleton.
fn c6(ctx: &Context) -> Result<Residual> {
    let dim = ctx.dim();
    let d = ctx.set().d_dense();
    let fp = ctx.set().f_pairs();
    let reps = shuffles(5, &[(2, 2), (1, 1)]);
    let mut rng = ctx.rng("C6");
    let cap = if ctx.n() >= 5 { 6_000 } else { 50_000 };
    let tuples = sample_ascending(&mut rng, dim, 5, cap);
    let mut acc = Acc::default();
    for t in &tuples {
        for q in 0..dim {
            let mut mass = 0.0f64;
            let b = bracket_alt(&reps, t, |w| {
                let mut s = 0.0;
                for &(a, va) in fp.list(w[0], w[1]) {
                    for &(bb, vb) in fp.list(w[2], w[3]) {
                        for &(c, vc) in fp.list(w[4], q) {
                            let term = va * vb * vc * d.get(a as usize, bb as usize, c as usize);
                            s += term;
                            mass += term.abs();
                        }
                    }
                }
                s
            });
            acc.push(b, mass / reps.len() as f64);
        }
    }
    Ok(acc.residual())
}

/// f^a_[ij f^b_kl f^c_pq f^d_r]s d4_(abcd) = 0: three exchangeable pairs
/// plus a singleton, trailing f index free.
fn c7(ctx: &Context) -> Result<Residual> {
    let dim = ctx.dim();
    let d4 = ctx.set().d(4)?;
    let fp = ctx.set().f_pairs();
    let reps = shuffles(7, &[(2, 3), (1, 1)]);
    let mut rng = ctx.rng("C7");
    let per_tuple = dim.min(8);
    let cap = if ctx.n() >= 5 { 60 } else { 160 };
    let tuples = sample_ascending(&mut rng, dim, 7, cap);
    let mut acc = Acc::default();
    let mut lab = [0usize; 4];
    for t in &tuples {
        for _ in 0..per_tuple {
            let s = rng.gen_range(0..dim);
            let mut mass = 0.0f64;
            let b = bracket_alt(&reps, t, |w| {
                let mut out = 0.0;
                for &(a, va) in fp.list(w[0], w[1]) {
                    lab[0] = a as usize;
                    for &(bb, vb) in fp.list(w[2], w[3]) {
                        lab[1] = bb as usize;
                        for &(c, vc) in fp.list(w[4], w[5]) {
                            lab[2] = c as usize;
                            for &(dd, vd) in fp.list(w[6], s) {
                                lab[3] = dd as usize;
                                let term = va * vb * vc * vd * d4.get(&lab);
                                out += term;
                                mass += term.abs();
                            }
                        }
                    }
                }
                out
            });
            acc.push(b, mass / reps.len() as f64);
        }
    }
    Ok(acc.residual())
}

fn l31_s2(ctx: &Context) -> Result<Residual> {
    let tuples: Vec<(Vec<usize>, usize)> = all_ascending(ctx.dim(), 4)
        .into_iter()
        .map(|t| (t, 0usize))
        .collect();
    let kernel = |lab: &[usize]| if lab[0] == lab[1] { 1.0 } else { 0.0 };
    Ok(f_chain_kernel(ctx, 2, &tuples, &kernel))
}

fn l31_s3(ctx: &Context) -> Result<Residual> {
    let d = ctx.set().d_dense();
    let tuples: Vec<(Vec<usize>, usize)> = all_ascending(ctx.dim(), 6)
        .into_iter()
        .map(|t| (t, 0usize))
        .collect();
    let kernel = |lab: &[usize]| d.get(lab[0], lab[1], lab[2]);
    Ok(f_chain_kernel(ctx, 3, &tuples, &kernel))
}

fn c9(ctx: &Context) -> Result<Residual> {
    let dim = ctx.dim();
    let k = ctx.deltadelta4();
    let mut rng = ctx.rng("C9");
    let cap = if ctx.n() >= 4 { 150 } else { 50_000 };
    let mut tuples = Vec::new();
    for t in sample_ascending(&mut rng, dim, 6, cap) {
        for q in 0..dim {
            tuples.push((t.clone(), q));
        }
    }
    let kernel = |lab: &[usize]| k.get(lab);
    Ok(f_chain_kernel(ctx, 3, &tuples, &kernel))
}

fn c9a(ctx: &Context) -> Result<Residual> {
    let dim = ctx.dim();
    let k = ctx.ddelta5();
    let mut rng = ctx.rng("C9A");
    let cap = if ctx.n() >= 4 { 40 } else { 50_000 };
    let mut tuples = Vec::new();
    for t in sample_ascending(&mut rng, dim, 8, cap) {
        for _ in 0..dim.min(8) {
            tuples.push((t.clone(), rng.gen_range(0..dim)));
        }
    }
    let kernel = |lab: &[usize]| k.get(lab);
    Ok(f_chain_kernel(ctx, 4, &tuples, &kernel))
}

pub fn defs() -> Vec<CheckDef> {
    vec![
        CheckDef {
            id: "C2",
            eq: "(C2)",
            group: Group::Jacobi,
            cost: Cost::Cheap,
            max_m: 2,
            applicable: always,
            tol: None,
            run: Some(c2),
            note: "order-3 Jacobi identity, bracket over three of four indices",
        },
        CheckDef {
            id: "C3",
            eq: "(C3)",
            group: Group::Jacobi,
            cost: Cost::Cheap,
            max_m: 3,
            applicable: always,
            tol: None,
            run: Some(c3),
            note: "order-5 cocycle against f, five-index bracket",
        },
        CheckDef {
            id: "C4",
            eq: "(C4)",
            group: Group::Jacobi,
            cost: Cost::Moderate,
            max_m: 4,
            applicable: always,
            tol: None,
            run: Some(c4),
            note: "order-7 cocycle against f, seven-index bracket",
        },
        CheckDef {
            id: "C5",
            eq: "(C5)",
            group: Group::Jacobi,
            cost: Cost::Heavy,
            max_m: 5,
            applicable: always,
            tol: None,
            run: Some(c5),
            note: "order-9 cocycle against f, nine-index bracket (sampled at n=5)",
        },
        CheckDef {
            id: "C6",
            eq: "(C6)",
            group: Group::Jacobi,
            cost: Cost::Moderate,
            max_m: 2,
            applicable: always,
            tol: None,
            run: Some(c6),
            note: "two f-pairs and a half-pair against d, bracket over five",
        },
        CheckDef {
            id: "C7",
            eq: "(C7)",
            group: Group::Jacobi,
            cost: Cost::Moderate,
            max_m: 2,
            applicable: always,
            tol: None,
            run: Some(c7),
            note: "three f-pairs and a half-pair against the order-4 d-tensor",
        },
        CheckDef {
            id: "C8",
            eq: "(C8)",
            group: Group::Jacobi,
            cost: Cost::Moderate,
            max_m: 3,
            applicable: always,
            tol: None,
            run: Some(c8),
            note: "generalized Jacobi identity for two order-5 cocycles",
        },
        CheckDef {
            id: "MGJI.m2",
            eq: "(C3X)",
            group: Group::Jacobi,
            cost: Cost::Moderate,
            max_m: 3,
            applicable: always,
            tol: None,
            run: Some(c3x),
            note: "mixed Jacobi: order-5 cocycle with free second index",
        },
        CheckDef {
            id: "MGJI.m3",
            eq: "(C4X)",
            group: Group::Jacobi,
            cost: Cost::Moderate,
            max_m: 4,
            applicable: always,
            tol: None,
            run: Some(c4x),
            note: "mixed Jacobi: order-7 cocycle with free second index",
        },
        CheckDef {
            id: "MGJI.m4",
            eq: "(C5X)",
            group: Group::Jacobi,
            cost: Cost::Heavy,
            max_m: 5,
            applicable: always,
            tol: None,
            run: Some(c5x),
            note: "mixed Jacobi: order-9 cocycle with free second index",
        },
        CheckDef {
            id: "L31.s2",
            eq: "(L3.1)",
            group: Group::Jacobi,
            cost: Cost::Cheap,
            max_m: 2,
            applicable: always,
            tol: None,
            run: Some(l31_s2),
            note: "antisymmetrized f-pair chain against the metric kernel",
        },
        CheckDef {
            id: "L31.s3",
            eq: "(L3.1)",
            group: Group::Jacobi,
            cost: Cost::Moderate,
            max_m: 2,
            applicable: always,
            tol: None,
            run: Some(l31_s3),
            note: "antisymmetrized f-pair chain against the order-3 d kernel",
        },
        CheckDef {
            id: "C9",
            eq: "(C9)",
            group: Group::Jacobi,
            cost: Cost::Moderate,
            max_m: 2,
            applicable: always,
            tol: None,
            run: Some(c9),
            note: "f-chain against the symmetrized delta-delta kernel",
        },
        CheckDef {
            id: "C9A",
            eq: "(C9A)",
            group: Group::Jacobi,
            cost: Cost::Moderate,
            max_m: 2,
            applicable: always,
            tol: None,
            run: Some(c9a),
            note: "f-chain against the symmetrized d-delta kernel",
        },
    ]
}
