//! Data-parallel evaluation over slices of inputs.
//!
//! With the default `parallel` feature, [`map`] and [`try_map`] fan work
//! out with rayon; without it they fall back to the sequential loop. The
//! explicitly sequential [`map_seq`] / [`try_map_seq`] are always
//! available so callers (and the benchmark suite) can compare both paths
//! regardless of the feature set.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::Result;

/// Applies `f` to every item, in parallel when the `parallel` feature is
/// enabled. Output order matches input order either way.
pub fn map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Send + Sync,
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

/// Sequential reference implementation of [`map`].
pub fn map_seq<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U,
{
    items.iter().map(f).collect()
}

/// Fallible variant of [`map`]; the first error wins.
pub fn try_map<T, U, F>(items: &[T], f: F) -> Result<Vec<U>>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> Result<U> + Send + Sync,
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

/// Sequential reference implementation of [`try_map`].
pub fn try_map_seq<T, U, F>(items: &[T], f: F) -> Result<Vec<U>>
where
    F: Fn(&T) -> Result<U>,
{
    items.iter().map(f).collect()
}
