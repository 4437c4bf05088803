//! Execution policy for the data-parallel loops.
//!
//! With the `parallel` feature (on by default) [`Exec::Parallel`] runs on the
//! rayon global pool. Without it both variants run sequentially, so callers
//! never need to care which build they are in. Every helper returns results in
//! input order, which keeps all outputs identical between the two policies.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    Parallel,
}

impl Default for Exec {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Exec::Parallel
        } else {
            Exec::Sequential
        }
    }
}

impl Exec {
    /// Maps `f` over `items`, preserving order.
    pub fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => items.par_iter().map(f).collect(),
            _ => items.iter().map(f).collect(),
        }
    }

    /// Maps `f` over `0..n`, preserving order.
    pub fn map_range<R, F>(self, n: usize, f: F) -> Vec<R>
    where
        R: Send,
        F: Fn(usize) -> R + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => (0..n).into_par_iter().map(f).collect(),
            _ => (0..n).map(f).collect(),
        }
    }

    /// Lowest index `i < n` for which `f` returns `Some`, with its value.
    pub fn find_first<R, F>(self, n: usize, f: F) -> Option<R>
    where
        R: Send,
        F: Fn(usize) -> Option<R> + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => (0..n).into_par_iter().find_map_first(f),
            _ => (0..n).find_map(f),
        }
    }
}
