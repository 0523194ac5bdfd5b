//! Switch between sequential and rayon-backed execution of the
//! embarrassingly parallel inner loops (brute-force scans, MITM halves,
//! prefix guesses, figure rows).
//!
//! Results are merged deterministically: `find_first` always returns the
//! match with the smallest index, and `map_collect` preserves input order,
//! so a run produces identical output whichever mode is selected. With the
//! `parallel` feature disabled, [`ExecMode::Parallel`] silently degrades to
//! the sequential path.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExecMode {
    Sequential,
    Parallel,
}

impl ExecMode {
    pub fn is_parallel(self) -> bool {
        match self {
            ExecMode::Sequential => false,
            ExecMode::Parallel => cfg!(feature = "parallel"),
        }
    }
}

impl Default for ExecMode {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            ExecMode::Parallel
        } else {
            ExecMode::Sequential
        }
    }
}

/// First `Some` result over `0..n`, by smallest index.
pub fn find_first_map<T, F>(mode: ExecMode, n: u64, f: F) -> Option<T>
where
    T: Send,
    F: Fn(u64) -> Option<T> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if mode.is_parallel() {
        return (0..n).into_par_iter().find_map_first(|i| f(i));
    }
    let _ = mode;
    (0..n).find_map(f)
}

/// Order-preserving map over a slice.
pub fn map_collect<I, T, F>(mode: ExecMode, items: &[I], f: F) -> Vec<T>
where
    I: Sync,
    T: Send,
    F: Fn(&I) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if mode.is_parallel() {
        return items.par_iter().map(f).collect();
    }
    let _ = mode;
    items.iter().map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn find_first_is_deterministic_across_modes() {
        // Many matches: both modes must agree on the smallest index.
        let pred = |i: u64| if i % 7 == 3 { Some(i) } else { None };
        let seq = find_first_map(ExecMode::Sequential, 10_000, pred);
        let par = find_first_map(ExecMode::Parallel, 10_000, pred);
        assert_eq!(seq, Some(3));
        assert_eq!(seq, par);
    }

    #[test]
    fn map_collect_preserves_order() {
        let items: Vec<u64> = (0..1000).collect();
        let seq = map_collect(ExecMode::Sequential, &items, |x| x * x);
        let par = map_collect(ExecMode::Parallel, &items, |x| x * x);
        assert_eq!(seq, par);
    }
}
