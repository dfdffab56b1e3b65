//! Deterministic parallelism helpers.
//!
//! Every parallel loop here partitions work into chunks of a fixed size that
//! does not depend on the worker count, and reductions combine per-chunk
//! results in chunk order. Floating-point output is therefore bitwise
//! identical for any number of threads.

use rayon::prelude::*;

/// Work-partition granularity. Fixed so that results never depend on the
/// thread count.
pub const CHUNK: usize = 1 << 14;

/// Resolve a worker-count request: explicit value, else `OMTK_WORKERS`,
/// else one worker per logical CPU.
pub fn resolve_workers(requested: Option<usize>) -> usize {
    requested
        .or_else(|| {
            std::env::var("OMTK_WORKERS")
                .ok()
                .and_then(|v| v.parse().ok())
        })
        .filter(|&w| w > 0)
        .unwrap_or_else(rayon::current_num_threads)
}

/// Run `f` inside a rayon pool with `workers` threads.
pub fn with_workers<R: Send>(workers: usize, f: impl FnOnce() -> R + Send) -> R {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .expect("thread pool");
    pool.install(f)
}

/// Fill a vector of length `len` with `f(i)`, in parallel.
pub fn fill(len: usize, f: impl Fn(usize) -> f64 + Sync) -> Vec<f64> {
    let mut out = vec![0.0; len];
    out.par_chunks_mut(CHUNK).enumerate().for_each(|(c, chunk)| {
        let base = c * CHUNK;
        for (i, slot) in chunk.iter_mut().enumerate() {
            *slot = f(base + i);
        }
    });
    out
}

/// Fill chunk-by-chunk when per-chunk state (cursors, scratch buffers) is
/// cheaper than per-element setup. `f` receives the chunk's start index and
/// its slice.
pub fn fill_chunked(len: usize, f: impl Fn(usize, &mut [f64]) + Sync) -> Vec<f64> {
    let mut out = vec![0.0; len];
    out.par_chunks_mut(CHUNK)
        .enumerate()
        .for_each(|(c, chunk)| f(c * CHUNK, chunk));
    out
}

/// Deterministic parallel sum of `f(i)` for `i in 0..len`: per-chunk partial
/// sums are accumulated sequentially, then combined in chunk order.
pub fn sum(len: usize, f: impl Fn(usize) -> f64 + Sync) -> f64 {
    if len == 0 {
        return 0.0;
    }
    let chunks = len.div_ceil(CHUNK);
    let partials: Vec<f64> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let lo = c * CHUNK;
            let hi = (lo + CHUNK).min(len);
            let mut acc = 0.0;
            for i in lo..hi {
                acc += f(i);
            }
            acc
        })
        .collect();
    partials.into_iter().sum()
}

/// Deterministic parallel max of `f(i)`; returns 0 for an empty range
/// (residual semantics: an empty tensor has no deviation).
pub fn max(len: usize, f: impl Fn(usize) -> f64 + Sync) -> f64 {
    if len == 0 {
        return 0.0;
    }
    let chunks = len.div_ceil(CHUNK);
    let partials: Vec<f64> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let lo = c * CHUNK;
            let hi = (lo + CHUNK).min(len);
            let mut acc = 0.0f64;
            for i in lo..hi {
                acc = acc.max(f(i));
            }
            acc
        })
        .collect();
    partials.into_iter().fold(0.0, f64::max)
}

/// Merge per-chunk accumulator vectors: each chunk of `0..len` produces a
/// dense vector via `f`, combined by summation in chunk order.
pub fn sum_vectors(len: usize, out_len: usize, f: impl Fn(usize, &mut [f64]) + Sync) -> Vec<f64> {
    if len == 0 {
        return vec![0.0; out_len];
    }
    let chunks = len.div_ceil(CHUNK);
    let partials: Vec<Vec<f64>> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let lo = c * CHUNK;
            let hi = (lo + CHUNK).min(len);
            let mut acc = vec![0.0; out_len];
            for i in lo..hi {
                f(i, &mut acc);
            }
            acc
        })
        .collect();
    let mut out = vec![0.0; out_len];
    for p in partials {
        for (o, v) in out.iter_mut().zip(p) {
            *o += v;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sum_matches_sequential() {
        let f = |i: usize| (i as f64).sin() * 1e-3;
        let seq: f64 = {
            // same chunking applied sequentially
            let mut acc = 0.0;
            let mut parts = Vec::new();
            for lo in (0..100_000).step_by(CHUNK) {
                let hi = (lo + CHUNK).min(100_000);
                let mut p = 0.0;
                for i in lo..hi {
                    p += f(i);
                }
                parts.push(p);
            }
            for p in parts {
                acc += p;
            }
            acc
        };
        let par = sum(100_000, f);
        assert_eq!(seq.to_bits(), par.to_bits());
    }

    #[test]
    fn workers_do_not_change_bits() {
        let f = |i: usize| ((i * 2654435761) as f64).sqrt().sin();
        let one = with_workers(1, || sum(300_000, f));
        let four = with_workers(4, || sum(300_000, f));
        let eight = with_workers(8, || sum(300_000, f));
        assert_eq!(one.to_bits(), four.to_bits());
        assert_eq!(one.to_bits(), eight.to_bits());
    }
}
