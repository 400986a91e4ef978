//! Thin dispatch between rayon and sequential execution.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Maps `f` over `0..n` and collects, in index order.
pub(crate) fn map_indexed<T: Send>(
    n: usize,
    parallel: bool,
    f: impl Fn(usize) -> T + Sync + Send,
) -> Vec<T> {
    #[cfg(feature = "parallel")]
    {
        if parallel {
            return (0..n).into_par_iter().map(&f).collect();
        }
    }
    let _ = parallel;
    (0..n).map(f).collect()
}

/// Reduces `f(0..n)` with `combine`; `combine` must be associative and
/// commutative-safe under ties for the result to be deterministic.
pub(crate) fn fold_indexed<T: Send + Clone + Sync>(
    n: usize,
    parallel: bool,
    identity: T,
    f: impl Fn(usize) -> T + Sync + Send,
    combine: impl Fn(T, T) -> T + Sync + Send,
) -> T {
    #[cfg(feature = "parallel")]
    {
        if parallel {
            return (0..n)
                .into_par_iter()
                .map(&f)
                .reduce(|| identity.clone(), &combine);
        }
    }
    let _ = parallel;
    (0..n).map(f).fold(identity, combine)
}
