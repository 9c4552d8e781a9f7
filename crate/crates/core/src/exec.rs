//! Data-parallel reduction over index ranges.
//!
//! Every sampling loop in the crate is a fold over `0..n` followed by an
//! associative, commutative merge, so the parallel and sequential paths
//! return identical results.

/// How sampling loops are executed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    /// Rayon work-stealing. Falls back to sequential when the crate is
    /// built without the `parallel` feature.
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

impl Execution {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }
}

#[cfg(feature = "parallel")]
const MIN_CHUNK: usize = 64;

/// Folds `fold` over `0..n` and combines partial accumulators with `merge`.
pub(crate) fn fold_range<A, I, F, M>(n: usize, exec: Execution, identity: I, fold: F, merge: M) -> A
where
    A: Send,
    I: Fn() -> A + Sync + Send,
    F: Fn(A, usize) -> A + Sync + Send,
    M: Fn(A, A) -> A + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return (0..n)
            .into_par_iter()
            .with_min_len(MIN_CHUNK)
            .fold(&identity, &fold)
            .reduce(&identity, &merge);
    }
    let _ = (&merge, exec);
    (0..n).fold(identity(), fold)
}

/// Runs two closures, concurrently when parallel execution is enabled.
pub(crate) fn join<A, B, RA, RB>(exec: Execution, a: A, b: B) -> (RA, RB)
where
    A: FnOnce() -> RA + Send,
    B: FnOnce() -> RB + Send,
    RA: Send,
    RB: Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return rayon::join(a, b);
    }
    let _ = exec;
    (a(), b())
}

/// `n` evenly spaced points from `lo` to `hi`, both included. A single
/// point is `lo`.
pub fn uniform_grid(lo: f64, hi: f64, n: usize) -> impl ExactSizeIterator<Item = f64> + Clone {
    (0..n).map(move |i| grid_point(lo, hi, n, i))
}

#[inline]
pub(crate) fn grid_point(lo: f64, hi: f64, n: usize, i: usize) -> f64 {
    if n <= 1 || i == 0 {
        lo
    } else if i == n - 1 {
        hi
    } else {
        lo + (hi - lo) * (i as f64) / ((n - 1) as f64)
    }
}
