//! Thin dispatch layer between rayon and plain sequential iteration.
//!
//! With the `parallel` feature (default) these helpers fan work out over
//! rayon's pool; without it they compile to straight loops. Callers are
//! written so both paths produce identical results: work items are
//! independent and outputs are collected in index order.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::error::Result;

pub(crate) fn map_indexed<T, F>(n: usize, f: F) -> Vec<T>
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

pub(crate) fn try_for_each_mut<T, F>(items: &mut [T], f: F) -> Result<()>
where
    T: Send,
    F: Fn(&mut T) -> Result<()> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter_mut().try_for_each(f)
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter_mut().try_for_each(f)
    }
}
