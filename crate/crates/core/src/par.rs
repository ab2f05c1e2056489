//! Ordered data-parallel map used by every sweep and lattice loop.
//!
//! Work is always cut into the same chunks regardless of the worker count and
//! the per-chunk results come back in chunk order, so reductions performed by
//! the caller are bit-identical between sequential and parallel runs.

/// Number of worker threads; `None` uses the global pool (or one thread when
/// the `parallel` feature is off).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Workers(pub Option<usize>);

impl Workers {
    pub const SINGLE: Workers = Workers(Some(1));

    pub fn effective(self) -> usize {
        match self.0 {
            Some(n) => n.max(1),
            None => default_threads(),
        }
    }
}

#[cfg(feature = "parallel")]
fn default_threads() -> usize {
    rayon::current_num_threads()
}

#[cfg(not(feature = "parallel"))]
fn default_threads() -> usize {
    1
}

/// Evaluates `f(0..n)` and returns the results in index order.
#[cfg(feature = "parallel")]
pub fn ordered_map<T, F>(n: usize, workers: Workers, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    use rayon::prelude::*;
    match workers.0 {
        Some(1) => (0..n).map(f).collect(),
        Some(k) => match rayon::ThreadPoolBuilder::new().num_threads(k).build() {
            Ok(pool) => pool.install(|| (0..n).into_par_iter().map(&f).collect()),
            Err(_) => (0..n).map(f).collect(),
        },
        None => (0..n).into_par_iter().map(f).collect(),
    }
}

#[cfg(not(feature = "parallel"))]
pub fn ordered_map<T, F>(n: usize, _workers: Workers, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    (0..n).map(f).collect()
}

/// Splits `0..len` into `chunks` contiguous ranges of near-equal size.
pub fn chunk_ranges(len: usize, chunks: usize) -> Vec<std::ops::Range<usize>> {
    let chunks = chunks.clamp(1, len.max(1));
    let base = len / chunks;
    let extra = len % chunks;
    let mut out = Vec::with_capacity(chunks);
    let mut start = 0;
    for i in 0..chunks {
        let size = base + usize::from(i < extra);
        out.push(start..start + size);
        start += size;
    }
    out
}
