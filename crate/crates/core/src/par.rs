//! Data-parallel helpers. With the `parallel` feature these dispatch to rayon;
//! without it they run the same closures sequentially. Output order is the
//! input order in both cases.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Maps `f` over `0..n`, preserving index order.
pub fn map_range<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).collect()
    }
}

/// Maps `f` over a slice, preserving order.
pub fn map_slice<S, T, F>(items: &[S], f: F) -> Vec<T>
where
    S: Sync,
    T: Send,
    F: Fn(&S) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}

/// Smallest index in `0..n` for which `f` returns `Some`, with its payload.
/// The parallel path still reports the lowest index so failures are deterministic.
pub fn find_first<T, F>(n: usize, f: F) -> Option<(usize, T)>
where
    T: Send,
    F: Fn(usize) -> Option<T> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n)
            .into_par_iter()
            .filter_map(|i| f(i).map(|t| (i, t)))
            .min_by_key(|(i, _)| *i)
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).find_map(|i| f(i).map(|t| (i, t)))
    }
}

/// Runs `f` with the worker count capped at `threads` (no-op when sequential).
pub fn with_threads<R: Send, F: FnOnce() -> R + Send>(threads: Option<usize>, f: F) -> R {
    #[cfg(feature = "parallel")]
    {
        if let Some(t) = threads.filter(|&t| t > 0) {
            if let Ok(pool) = rayon::ThreadPoolBuilder::new().num_threads(t).build() {
                return pool.install(f);
            }
        }
        f()
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = threads;
        f()
    }
}
