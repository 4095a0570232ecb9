//! Execution strategy for the data-parallel kernels.
//!
//! With the `parallel` feature (on by default) the row-wise kernels in
//! [`crate::fuzzy`], [`crate::select`] and [`crate::cipher`] can fan out
//! over rayon's thread pool. Without it, [`Execution::Parallel`] silently
//! runs the sequential path. Both paths produce bit-identical output.

/// How a batch kernel distributes its rows.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    Parallel,
}

impl Execution {
    /// `true` when this strategy will actually run on the rayon pool.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

// Below this many rows the rayon split costs more than it saves.
pub(crate) const MIN_PAR_LEN: usize = 1024;

/// Maps `f` over `items` in order, in parallel when `exec` allows it.
pub(crate) fn map_collect<T, U, F>(exec: Execution, items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() && items.len() >= MIN_PAR_LEN {
        use rayon::prelude::*;
        return items.par_iter().with_min_len(MIN_PAR_LEN / 4).map(f).collect();
    }
    let _ = exec;
    items.iter().map(f).collect()
}

/// Fallible variant of [`map_collect`]; the first error in index order wins.
pub(crate) fn try_map_collect<T, U, E, F>(exec: Execution, items: &[T], f: F) -> Result<Vec<U>, E>
where
    T: Sync,
    U: Send,
    E: Send,
    F: Fn(&T) -> Result<U, E> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() && items.len() >= MIN_PAR_LEN {
        use rayon::prelude::*;
        // collect::<Result<Vec<_>>> on an indexed iterator keeps order; the
        // reported error is whichever one rayon hits first, so re-scan
        // sequentially on failure to keep error reporting deterministic.
        let out: Result<Vec<U>, E> = items
            .par_iter()
            .with_min_len(MIN_PAR_LEN / 4)
            .map(&f)
            .collect();
        return match out {
            Ok(v) => Ok(v),
            Err(e) => {
                for item in items {
                    f(item)?;
                }
                Err(e)
            }
        };
    }
    let _ = exec;
    items.iter().map(f).collect()
}
