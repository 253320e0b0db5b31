//! Index-parallel maps; sequential without the `parallel` feature.

/// `(0..n).map(f).collect()`, possibly in parallel. Each output is computed
/// independently, so results do not depend on scheduling.
pub fn map_range<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).collect()
    }
}
