//! Sample-sweep execution: data-parallel over sample indices when the
//! `parallel` feature is enabled, plain iteration otherwise.
//!
//! Callers must derive each sample's inputs from the sample index alone and
//! combine results with an associative, commutative, deterministic reduction
//! (max/min/count style). Under that contract the two runners produce
//! identical results.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::error::Result;

/// Maps every index in `0..n` and reduces; parallel when the `parallel`
/// feature is on. Returns `Ok(None)` for `n == 0`.
pub fn try_map_reduce<T, M, C>(n: u64, map: M, combine: C) -> Result<Option<T>>
where
    T: Send,
    M: Fn(u64) -> Result<T> + Sync + Send,
    C: Fn(T, T) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n)
            .into_par_iter()
            .map(map)
            .try_reduce_with(|a, b| Ok(combine(a, b)))
            .transpose()
    }
    #[cfg(not(feature = "parallel"))]
    {
        try_map_reduce_seq(n, map, combine)
    }
}

/// Sequential reference runner, always available; the criterion suite
/// compares it against the parallel path.
pub fn try_map_reduce_seq<T, M, C>(n: u64, map: M, combine: C) -> Result<Option<T>>
where
    M: Fn(u64) -> Result<T>,
    C: Fn(T, T) -> T,
{
    let mut acc: Option<T> = None;
    for i in 0..n {
        let item = map(i)?;
        acc = Some(match acc {
            None => item,
            Some(prev) => combine(prev, item),
        });
    }
    Ok(acc)
}
