//! Order-preserving map over independent inputs — the shape of every sweep in
//! the toolkit (one prime per work item). With the `parallel` feature (on by
//! default) it fans out over rayon's current thread pool; without it the same
//! call runs sequentially. `map_seq` is always sequential, so the two can be
//! compared directly (the benchmarks do exactly that).

/// Applies `f` to every input, returning outputs in input order. Runs on the
/// current rayon pool when the `parallel` feature is enabled.
#[cfg(feature = "parallel")]
pub fn map<T, U, F>(inputs: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync + Send,
{
    use rayon::prelude::*;
    inputs.into_par_iter().map(f).collect()
}

/// Sequential fallback with the identical signature.
#[cfg(not(feature = "parallel"))]
pub fn map<T, U, F>(inputs: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync + Send,
{
    map_seq(inputs, f)
}

/// The always-sequential evaluation of the same map, regardless of features.
pub fn map_seq<T, U, F>(inputs: Vec<T>, f: F) -> Vec<U>
where
    F: Fn(T) -> U,
{
    inputs.into_iter().map(f).collect()
}
