//! Data-parallel scans over windows and point lists.
//!
//! With the `parallel` feature the scans run on the current rayon pool;
//! without it they run sequentially. Output order never depends on the
//! scheduler: results are collected in window (lexicographic) order.

use crate::lattice::{Point, Window};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Window points satisfying `pred`, in lexicographic order.
pub fn filter_window<F>(window: &Window, pred: F) -> Vec<Point>
where
    F: Fn(&Point) -> bool + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..window.len())
            .into_par_iter()
            .map(|k| window.point_at(k))
            .filter(|p| pred(p))
            .collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        window.iter().filter(|p| pred(p)).collect()
    }
}

/// `f` evaluated at every window point, in window order.
pub fn map_window<T, F>(window: &Window, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(&Point) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..window.len())
            .into_par_iter()
            .map(|k| f(&window.point_at(k)))
            .collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        window.iter().map(|p| f(&p)).collect()
    }
}

/// Order-preserving parallel map over a slice.
pub fn map_slice<S, T, F>(items: &[S], f: F) -> Vec<T>
where
    S: Sync,
    T: Send,
    F: Fn(&S) -> T + Sync + Send,
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

/// First item (in slice order) for which `f` returns `Some`.
pub fn find_map_first<S, T, F>(items: &[S], f: F) -> Option<T>
where
    S: Sync,
    T: Send,
    F: Fn(&S) -> Option<T> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().find_map_first(f)
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().find_map(f)
    }
}

/// `true` iff `pred` holds at every window point.
pub fn all_window<F>(window: &Window, pred: F) -> bool
where
    F: Fn(&Point) -> bool + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..window.len())
            .into_par_iter()
            .all(|k| pred(&window.point_at(k)))
    }
    #[cfg(not(feature = "parallel"))]
    {
        window.iter().all(|p| pred(&p))
    }
}
