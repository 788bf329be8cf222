//! Execution policy for the per-cell kernels.
//!
//! With the `parallel` feature (default) the maps run on the rayon pool;
//! without it, or with [`ExecPolicy::Sequential`], they run in index order.
//! Every map writes disjoint output slots, so both policies produce
//! bitwise-identical results. Reductions are never parallelized.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ExecPolicy {
    Sequential,
    #[default]
    Parallel,
}

impl ExecPolicy {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == ExecPolicy::Parallel
    }
}

/// Fills `out` in chunks of `chunk` elements; chunk `k` is produced by `f(k, chunk_slice)`.
pub fn for_each_chunk<T, F>(policy: ExecPolicy, out: &mut [T], chunk: usize, f: F)
where
    T: Send,
    F: Fn(usize, &mut [T]) + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if policy.is_parallel() {
        out.par_chunks_mut(chunk)
            .enumerate()
            .for_each(|(k, c)| f(k, c));
        return;
    }
    let _ = policy;
    for (k, c) in out.chunks_mut(chunk).enumerate() {
        f(k, c);
    }
}

/// Fallible variant of [`for_each_chunk`]. On failure the error of the lowest
/// failing chunk index is returned, independent of scheduling.
pub fn try_for_each_chunk<T, E, F>(
    policy: ExecPolicy,
    out: &mut [T],
    chunk: usize,
    f: F,
) -> Result<(), E>
where
    T: Send,
    E: Send,
    F: Fn(usize, &mut [T]) -> Result<(), E> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if policy.is_parallel() {
        let errs: Vec<(usize, E)> = out
            .par_chunks_mut(chunk)
            .enumerate()
            .filter_map(|(k, c)| f(k, c).err().map(|e| (k, e)))
            .collect();
        return match errs.into_iter().min_by_key(|(k, _)| *k) {
            Some((_, e)) => Err(e),
            None => Ok(()),
        };
    }
    let _ = policy;
    for (k, c) in out.chunks_mut(chunk).enumerate() {
        f(k, c)?;
    }
    Ok(())
}
