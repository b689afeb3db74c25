//! Execution strategy for the data-parallel inner loops.
//!
//! Every parallel site in the crate goes through [`map_collect`] (or the
//! range variant), which preserves input order, so outputs are identical
//! whether the work runs on one thread or many.  The `parallel` cargo
//! feature selects the rayon backend at compile time; [`set_parallel`]
//! disables it at runtime (used by `PZLAB_THREADS=1` and by the benches
//! to compare backends within one build).

use std::sync::atomic::{AtomicBool, Ordering};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

static PARALLEL_ENABLED: AtomicBool = AtomicBool::new(true);

/// Enable or disable the rayon backend at runtime.
pub fn set_parallel(enabled: bool) {
    PARALLEL_ENABLED.store(enabled, Ordering::SeqCst);
}

/// True when the rayon backend is compiled in and currently enabled.
pub fn parallel_enabled() -> bool {
    cfg!(feature = "parallel") && PARALLEL_ENABLED.load(Ordering::SeqCst)
}

/// Cap the global thread pool. Call once, before any parallel work.
/// `n == 1` falls back to the sequential path entirely.
pub fn configure_threads(n: usize) {
    if n <= 1 {
        set_parallel(false);
        return;
    }
    #[cfg(feature = "parallel")]
    {
        // Ignore the error if a global pool already exists.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

/// Order-preserving map over a slice.
pub fn map_collect<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if parallel_enabled() {
        return items.par_iter().map(f).collect();
    }
    items.iter().map(f).collect()
}

/// Order-preserving map over an index range.
pub fn map_range<U, F>(n: usize, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(usize) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if parallel_enabled() {
        return (0..n).into_par_iter().map(f).collect();
    }
    (0..n).map(f).collect()
}

/// Sequential reference implementations, kept callable with the parallel
/// feature on so the benches can compare backends in a single binary.
pub mod seq {
    pub fn map_collect<T, U, F>(items: &[T], f: F) -> Vec<U>
    where
        F: Fn(&T) -> U,
    {
        items.iter().map(f).collect()
    }

    pub fn map_range<U, F>(n: usize, f: F) -> Vec<U>
    where
        F: Fn(usize) -> U,
    {
        (0..n).map(f).collect()
    }
}
