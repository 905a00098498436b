//! Minimal parallel/sequential execution switch.
//!
//! Grid sweeps in this crate are embarrassingly parallel: every point is
//! independent and the output order is fixed by the index. `map_indexed`
//! runs on the rayon pool when the `parallel` feature is enabled and
//! degrades to a plain iterator otherwise; `map_indexed_seq` is always
//! sequential so benchmarks can compare the two paths. Both produce the
//! same `Vec` in the same order, keeping outputs byte-identical.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Map `f` over `0..n`, in parallel when the `parallel` feature is on.
pub fn map_indexed<T, F>(n: usize, f: F) -> Vec<T>
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

/// Map `f` over `0..n` on the current thread, regardless of features.
pub fn map_indexed_seq<T, F>(n: usize, f: F) -> Vec<T>
where
    F: Fn(usize) -> T,
{
    (0..n).map(f).collect()
}
