//! Per-n evaluation context: one immutable invariant set plus lazily built
//! derived tensors shared by every check that runs at this n.

use std::sync::{Mutex, OnceLock};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::invariants::{
    d5_mid_exempt, d6_mid_exempt, d6_prime, dd_chain, ddelta4_last_exempt, ddelta5, deltadelta4,
    omega_components, Dense4, InvariantSet,
};
use crate::lambda::LambdaAlgebra;
use crate::tensor::rank::{binomial, next_combination, rank_ascending};
use crate::tensor::{AntisymTensor, SymTensor};
use crate::verify::Adjudication;

pub struct Context {
    set: InvariantSet,
    max_m: usize,
    lam: OnceLock<LambdaAlgebra>,
    dd: OnceLock<Dense4>,
    me5: OnceLock<Vec<SymTensor>>,
    me6: OnceLock<Vec<SymTensor>>,
    d6p: OnceLock<SymTensor>,
    ddel5: OnceLock<SymTensor>,
    ddel4le: OnceLock<Vec<SymTensor>>,
    deldel4: OnceLock<SymTensor>,
    a5: OnceLock<Vec<f64>>,
    a7: OnceLock<Vec<f64>>,
    a9: OnceLock<Vec<f64>>,
    k57: OnceLock<Vec<f64>>,
    k79: OnceLock<Vec<f64>>,
    g7: OnceLock<Vec<f64>>,
    f_rows: OnceLock<Vec<Vec<(u32, u32, f64)>>>,
    adjudications: Mutex<Vec<Adjudication>>,
}

impl Context {
    /// Build the shared tensor set for one n, with cocycles (and t-tensors)
    /// through index `max_m` where feasible.
    pub fn new(n: usize, max_m: usize) -> Result<Self> {
        let set = InvariantSet::build(n, max_m)?;
        Ok(Self {
            set,
            max_m,
            lam: OnceLock::new(),
            dd: OnceLock::new(),
            me5: OnceLock::new(),
            me6: OnceLock::new(),
            d6p: OnceLock::new(),
            ddel5: OnceLock::new(),
            ddel4le: OnceLock::new(),
            deldel4: OnceLock::new(),
            a5: OnceLock::new(),
            a7: OnceLock::new(),
            a9: OnceLock::new(),
            k57: OnceLock::new(),
            k79: OnceLock::new(),
            g7: OnceLock::new(),
            f_rows: OnceLock::new(),
            adjudications: Mutex::new(Vec::new()),
        })
    }

    pub fn n(&self) -> usize {
        self.set.n()
    }

    pub fn dim(&self) -> usize {
        self.set.dim()
    }

    /// Highest cocycle index the shared set was built with.
    pub fn max_m(&self) -> usize {
        self.max_m
    }

    pub fn set(&self) -> &InvariantSet {
        &self.set
    }

    pub fn lam(&self) -> &LambdaAlgebra {
        self.lam
            .get_or_init(|| LambdaAlgebra::new(self.set.basis().clone()))
    }

    /// Raw two-vertex chain `sum_x d_abx d_xcd` as a dense order-4 table.
    pub fn dd(&self) -> &Dense4 {
        self.dd
            .get_or_init(|| dd_chain(self.set.d_dense(), self.set.d_pairs()))
    }

    /// Order-5 family member with the middle chain slot exempt, per slot value.
    pub fn me5(&self) -> &[SymTensor] {
        self.me5
            .get_or_init(|| d5_mid_exempt(self.dd(), self.set.d_pairs()))
    }

    /// Order-6 family member with the second chain slot exempt.
    pub fn me6(&self) -> &[SymTensor] {
        self.me6
            .get_or_init(|| d6_mid_exempt(self.dd(), self.set.d_pairs()))
    }

    /// Triple-vertex order-6 symmetric invariant.
    pub fn d6_prime(&self) -> &SymTensor {
        self.d6p
            .get_or_init(|| d6_prime(self.set.d_dense(), self.set.d_pairs()))
    }

    /// Symmetrized delta-d product of order 5.
    pub fn ddelta5(&self) -> &SymTensor {
        self.ddel5.get_or_init(|| ddelta5(self.set.d_dense()))
    }

    /// Delta-d product of order 5 with the last d slot exempt.
    pub fn ddelta4_le(&self) -> &[SymTensor] {
        self.ddel4le
            .get_or_init(|| ddelta4_last_exempt(self.set.d_dense()))
    }

    /// Symmetrized delta-delta product of order 4.
    pub fn deltadelta4(&self) -> &SymTensor {
        self.deldel4.get_or_init(|| deltadelta4(self.dim()))
    }

    /// Cocycle accessor that reports an order absent from the shared build
    /// as infeasible, so the runner skips instead of failing.
    pub fn omega(&self, m: usize) -> Result<&AntisymTensor> {
        self.set.omega(m).map_err(|_| self.absent(m))
    }

    /// Same skip semantics for the symmetric t-tensors.
    pub fn t(&self, m: usize) -> Result<&SymTensor> {
        self.set.t(m).map_err(|_| self.absent(m))
    }

    fn absent(&self, m: usize) -> Error {
        let components = omega_components(self.n(), m);
        Error::Infeasible {
            requested: 2 * m - 1,
            dim: self.dim(),
            components,
            bytes: components.saturating_mul(8),
        }
    }

    /// Tail table of the order-5 cocycle: row per ascending 4-subset, one
    /// signed value per trailing index.
    pub fn a5(&self) -> Result<&[f64]> {
        let w = self.omega(3)?;
        Ok(self.a5.get_or_init(|| tail_table(w)))
    }

    /// Tail table of the order-7 cocycle: row per ascending 6-subset.
    pub fn a7(&self) -> Result<&[f64]> {
        let w = self.omega(4)?;
        Ok(self.a7.get_or_init(|| tail_table(w)))
    }

    /// Tail table of the order-9 cocycle: row per ascending 8-subset.
    /// Sizeable (~140 MB at n = 5), built only for heavy-tier checks.
    pub fn a9(&self) -> Result<&[f64]> {
        let w = self.omega(5)?;
        Ok(self.a9.get_or_init(|| tail_table(w)))
    }

    /// Ordered contraction of the order-5 and order-7 cocycles over their
    /// four leading indices, laid out as `[rank3(p<q<r)][s]` with the
    /// triple from the order-7 side and s from the order-5 side.
    pub fn w5w7_common4(&self) -> Result<&[f64]> {
        let w7 = self.omega(4)?;
        let a5 = self.a5()?;
        Ok(self
            .k57
            .get_or_init(|| common_block_contraction(w7, a5, 4, self.dim())))
    }

    /// Ordered contraction of the order-7 and order-9 cocycles over their
    /// six leading indices, laid out as `[rank3(s<t<u)][r]`.
    pub fn w7w9_common6(&self) -> Result<&[f64]> {
        let w9 = self.omega(5)?;
        let a7 = self.a7()?;
        Ok(self
            .k79
            .get_or_init(|| common_block_contraction(w9, a7, 6, self.dim())))
    }

    /// Ordered self-contraction of the order-7 cocycle over five common
    /// indices: flat `[rank2][rank2]` over ascending pairs.
    pub fn w7_pair_gram(&self) -> Result<&[f64]> {
        let w7 = self.omega(4)?;
        Ok(self.g7.get_or_init(|| pair_gram(w7, self.dim())))
    }

    /// For each k, the ascending pairs (i, j) with a nonzero f_{ijk}.
    pub fn f_rows(&self) -> &[Vec<(u32, u32, f64)>] {
        self.f_rows.get_or_init(|| {
            let mut rows = vec![Vec::new(); self.dim()];
            self.set.f().for_each(|t, v| {
                if v != 0.0 {
                    let (i, j, k) = (t[0] as u32, t[1] as u32, t[2]);
                    rows[k].push((i, j, v));
                    rows[t[1]].push((i, t[2] as u32, -v));
                    rows[t[0]].push((j, t[2] as u32, v));
                }
            });
            rows
        })
    }

    /// Deterministic per-check randomness: the stream depends only on the
    /// check id and n, never on execution order or worker count.
    pub fn rng(&self, id: &str) -> ChaCha8Rng {
        let mut seed = [0u8; 32];
        seed[0] = self.n() as u8;
        for (i, b) in id.bytes().enumerate() {
            seed[1 + (i % 31)] ^= b.rotate_left((i / 31) as u32);
        }
        ChaCha8Rng::from_seed(seed)
    }

    /// Record a named adjudication note for the report.
    pub fn adjudicate(&self, adj: Adjudication) {
        self.adjudications.lock().unwrap().push(adj);
    }

    pub fn take_adjudications(&self) -> Vec<Adjudication> {
        std::mem::take(&mut self.adjudications.lock().unwrap())
    }
}

/// Signed tail table of an antisymmetric tensor: one row per ascending
/// (q-1)-subset, one column per trailing index s, holding the value at
/// (subset..., s). Rows are colex ranks; entries with s inside the subset
/// stay zero.
fn tail_table(w: &AntisymTensor) -> Vec<f64> {
    let dim = w.dim();
    let q = w.order();
    let rows = binomial(dim, q - 1) as usize;
    let mut out = vec![0.0; rows * dim];
    let mut rest = vec![0usize; q - 1];
    w.for_each(|t, v| {
        if v == 0.0 {
            return;
        }
        for j in 0..q {
            let mut at = 0;
            for (i, &x) in t.iter().enumerate() {
                if i != j {
                    rest[at] = x;
                    at += 1;
                }
            }
            // moving slot j to the back crosses q-1-j slots
            let sign = if (q - 1 - j) % 2 == 0 { v } else { -v };
            out[rank_ascending(&rest) * dim + t[j]] = sign;
        }
    });
    out
}

/// Flat binomial lookup `bt[v * (maxk + 1) + k] = C(v, k)` for subset
/// ranking in hot loops.
fn binom_table(dim: usize, maxk: usize) -> Vec<usize> {
    let mut bt = vec![0usize; (dim + 1) * (maxk + 1)];
    for v in 0..=dim {
        for k in 0..=maxk {
            bt[v * (maxk + 1) + k] = binomial(v, k) as usize;
        }
    }
    bt
}

#[inline]
fn rank_from(bt: &[usize], stride: usize, tuple: &[usize]) -> usize {
    tuple
        .iter()
        .enumerate()
        .map(|(i, &v)| bt[v * stride + i + 1])
        .sum()
}

/// Ascending `k`-subsets of slot positions 0..q, each with the parity of
/// moving those slots to the front.
fn position_subsets(q: usize, k: usize) -> Vec<(Vec<usize>, f64)> {
    let mut out = Vec::new();
    let mut pos: Vec<usize> = (0..k).collect();
    loop {
        out.push((pos.clone(), crate::tensor::rank::front_sign(&pos)));
        if !next_combination(&mut pos, q) {
            break;
        }
    }
    out
}

/// Ordered contraction over a common leading block: with `big` of order
/// `common + 3` and `tail` the tail table of the order-(common + 1)
/// cocycle, returns `out[rank3(rest) * dim + s] = sum over ordered common
/// blocks K of big_{K rest} small_{K s}`.
fn common_block_contraction(
    big: &AntisymTensor,
    tail: &[f64],
    common: usize,
    dim: usize,
) -> Vec<f64> {
    let q = big.order();
    debug_assert_eq!(q, common + 3);
    let triples = binomial(dim, 3) as usize;
    let mut out = vec![0.0; triples * dim];
    if big.len() == 0 || tail.is_empty() {
        return out;
    }
    let fact: f64 = (1..=common).map(|k| k as f64).product();
    let stride = q + 1;
    let bt = binom_table(dim, q);
    let picks = position_subsets(q, common);
    let mut kept = vec![0usize; common];
    let mut rest = [0usize; 3];
    big.for_each(|t, v| {
        if v == 0.0 {
            return;
        }
        for (pos, sign) in &picks {
            let mut ka = 0;
            let mut ra = 0;
            for (i, &x) in t.iter().enumerate() {
                if ka < common && pos[ka] == i {
                    kept[ka] = x;
                    ka += 1;
                } else {
                    rest[ra] = x;
                    ra += 1;
                }
            }
            let rk = rank_from(&bt, stride, &kept);
            let r3 = rank_from(&bt, stride, &rest);
            let w = fact * sign * v;
            let row = &tail[rk * dim..rk * dim + dim];
            let orow = &mut out[r3 * dim..r3 * dim + dim];
            for (o, tv) in orow.iter_mut().zip(row) {
                *o += w * tv;
            }
        }
    });
    out
}

/// Ordered self-contraction of the order-7 cocycle over five common
/// indices, returned as a flat symmetric `[rank2][rank2]` gram over
/// ascending pairs.
fn pair_gram(w7: &AntisymTensor, dim: usize) -> Vec<f64> {
    let pairs = binomial(dim, 2) as usize;
    let mut gram = vec![0.0; pairs * pairs];
    if w7.len() == 0 {
        return gram;
    }
    let rows5 = binomial(dim, 5) as usize;
    let mut rows: Vec<Vec<(u32, f64)>> = vec![Vec::new(); rows5];
    let stride = 8;
    let bt = binom_table(dim, 7);
    let picks = position_subsets(7, 5);
    w7.for_each(|t, v| {
        if v == 0.0 {
            return;
        }
        let mut kept = [0usize; 5];
        let mut rest = [0usize; 2];
        for (pos, sign) in &picks {
            let mut ka = 0;
            let mut ra = 0;
            for (i, &x) in t.iter().enumerate() {
                if ka < 5 && pos[ka] == i {
                    kept[ka] = x;
                    ka += 1;
                } else {
                    rest[ra] = x;
                    ra += 1;
                }
            }
            let r5 = rank_from(&bt, stride, &kept);
            let r2 = rank_from(&bt, stride, &rest);
            rows[r5].push((r2 as u32, sign * v));
        }
    });
    for row in &rows {
        for (ai, &(a, va)) in row.iter().enumerate() {
            for &(b, vb) in &row[ai..] {
                let x = 120.0 * va * vb;
                gram[a as usize * pairs + b as usize] += x;
                if a != b {
                    gram[b as usize * pairs + a as usize] += x;
                }
            }
        }
    }
    gram
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tail_table_matches_signed_lookups() {
        let ctx = Context::new(3, 3).unwrap();
        let w5 = ctx.omega(3).unwrap();
        let a5 = ctx.a5().unwrap();
        let dim = ctx.dim();
        for (rest, s, want) in [
            ([0, 1, 2, 3], 7usize, w5.get(&[0, 1, 2, 3, 7])),
            ([0, 1, 2, 4], 3, w5.get(&[0, 1, 2, 4, 3])),
            ([1, 2, 5, 7], 0, w5.get(&[1, 2, 5, 7, 0])),
        ] {
            let got = a5[rank_ascending(&rest) * dim + s];
            assert!((got - want).abs() < 1e-15, "rest {rest:?} s {s}");
        }
    }

    #[test]
    fn common_block_contraction_matches_brute_force() {
        let ctx = Context::new(3, 4).unwrap();
        let dim = ctx.dim();
        let w5 = ctx.omega(3).unwrap();
        let w7 = ctx.omega(4).unwrap();
        let r = ctx.w5w7_common4().unwrap();
        // brute ordered sum = 4! * sum over ascending common blocks
        for (triple, s) in [([0usize, 1, 2], 3usize), ([2, 5, 7], 0), ([1, 3, 6], 4)] {
            let mut want = 0.0;
            let mut idx4 = [0usize, 1, 2, 3];
            loop {
                let a = w5.get(&[idx4[0], idx4[1], idx4[2], idx4[3], s]);
                let b = w7.get(&[
                    idx4[0], idx4[1], idx4[2], idx4[3], triple[0], triple[1], triple[2],
                ]);
                want += 24.0 * a * b;
                if !next_combination(&mut idx4, dim) {
                    break;
                }
            }
            let got = r[rank_ascending(&triple) * dim + s];
            assert!(
                (got - want).abs() < 1e-10 * want.abs().max(1.0),
                "triple {triple:?} s {s}: got {got} want {want}"
            );
        }
    }

    #[test]
    fn pair_gram_matches_brute_force_at_n4() {
        let ctx = Context::new(4, 4).unwrap();
        let dim = ctx.dim();
        let w7 = ctx.omega(4).unwrap();
        let g = ctx.w7_pair_gram().unwrap();
        let pairs = binomial(dim, 2) as usize;
        let pq = [0usize, 1];
        let rs = [0usize, 2];
        let mut idx5 = [0usize, 1, 2, 3, 4];
        let mut want = 0.0;
        loop {
            let a = w7.get(&[idx5[0], idx5[1], idx5[2], idx5[3], idx5[4], pq[0], pq[1]]);
            let b = w7.get(&[idx5[0], idx5[1], idx5[2], idx5[3], idx5[4], rs[0], rs[1]]);
            want += 120.0 * a * b;
            if !next_combination(&mut idx5, dim) {
                break;
            }
        }
        let got = g[rank_ascending(&pq) * pairs + rank_ascending(&rs)];
        assert!(
            (got - want).abs() < 1e-10 * want.abs().max(1.0),
            "got {got} want {want}"
        );
    }
}
