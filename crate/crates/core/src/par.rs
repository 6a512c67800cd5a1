//! Batch execution over index ranges and slices.
//!
//! With the `parallel` feature the work is spread over the rayon pool,
//! otherwise every helper runs a plain sequential loop. `Exec` lets callers
//! (and the benches) pick either path explicitly at run time.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
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
    #[cfg_attr(not(feature = "parallel"), allow(dead_code))]
    fn parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }
}

/// Maps `f` over `0..n`, keeping the `Some` results in index order.
pub fn filter_map_range<U, F>(exec: Exec, n: u64, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(u64) -> Option<U> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.parallel() {
        return (0..n).into_par_iter().filter_map(f).collect();
    }
    let _ = exec;
    (0..n).filter_map(f).collect()
}

/// Sums `f` over `0..n`.
pub fn sum_range<F>(exec: Exec, n: u64, f: F) -> u64
where
    F: Fn(u64) -> u64 + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.parallel() {
        return (0..n).into_par_iter().map(f).sum();
    }
    let _ = exec;
    (0..n).map(f).sum()
}

/// Largest value of `f` over `0..n`, `None` for an empty range.
pub fn max_range<F>(exec: Exec, n: u64, f: F) -> Option<i64>
where
    F: Fn(u64) -> i64 + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.parallel() {
        return (0..n).into_par_iter().map(f).max();
    }
    let _ = exec;
    (0..n).map(f).max()
}

/// Maps `f` over a slice, preserving order.
pub fn map_slice<T, U, F>(exec: Exec, items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.parallel() {
        return items.par_iter().map(f).collect();
    }
    let _ = exec;
    items.iter().map(f).collect()
}
