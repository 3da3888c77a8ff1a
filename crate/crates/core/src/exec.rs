//! Execution strategy for the data-parallel sweeps.
//!
//! With the `parallel` feature (default) work is spread over a rayon pool;
//! without it every strategy runs on the calling thread. Results never depend
//! on the strategy: callers only use order-preserving maps and merge
//! canonically.

use std::sync::atomic::{AtomicUsize, Ordering};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Exec {
    Sequential,
    /// Parallel over the global rayon pool.
    #[default]
    Parallel,
    /// Parallel over a dedicated pool with this many threads.
    ParallelWith(usize),
}

impl Exec {
    /// `0` or `None` means "let rayon decide", `1` is sequential.
    pub fn from_workers(workers: Option<usize>) -> Self {
        match workers {
            None | Some(0) => Exec::Parallel,
            Some(1) => Exec::Sequential,
            Some(n) => Exec::ParallelWith(n),
        }
    }

    /// Order-preserving map.
    pub fn map<T, R, F>(&self, items: Vec<T>, f: F) -> Vec<R>
    where
        T: Send,
        R: Send,
        F: Fn(T) -> R + Sync + Send,
    {
        match self {
            Exec::Sequential => items.into_iter().map(f).collect(),
            #[cfg(feature = "parallel")]
            Exec::Parallel => {
                use rayon::prelude::*;
                items.into_par_iter().map(f).collect()
            }
            #[cfg(feature = "parallel")]
            Exec::ParallelWith(n) => {
                use rayon::prelude::*;
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(*n)
                    .build()
                    .expect("failed to build rayon pool");
                pool.install(|| items.into_par_iter().map(f).collect())
            }
            #[cfg(not(feature = "parallel"))]
            _ => items.into_iter().map(f).collect(),
        }
    }

    /// Finds the lowest-indexed item for which `f` returns `Some`, the same
    /// answer a left-to-right scan would give.
    ///
    /// Workers share a cancellation token: once item `i` has produced a hit,
    /// any worker on an index above `i` is told to stop.
    pub fn find_first<T, R, F>(&self, items: Vec<T>, f: F) -> Option<R>
    where
        T: Send,
        R: Send,
        F: Fn(T, &Cancel) -> Option<R> + Sync + Send,
    {
        let best = AtomicUsize::new(usize::MAX);
        let indexed: Vec<(usize, T)> = items.into_iter().enumerate().collect();
        let results = self.map(indexed, |(i, item)| {
            if best.load(Ordering::Relaxed) < i {
                return None;
            }
            let cancel = Cancel { index: i, best: &best };
            let hit = f(item, &cancel)?;
            best.fetch_min(i, Ordering::Relaxed);
            Some((i, hit))
        });
        results.into_iter().flatten().min_by_key(|(i, _)| *i).map(|(_, r)| r)
    }
}

/// Cooperative cancellation handle passed to [`Exec::find_first`] workers.
pub struct Cancel<'a> {
    index: usize,
    best: &'a AtomicUsize,
}

impl Cancel<'_> {
    /// True once a lower-indexed partition has already found a result.
    pub fn is_cancelled(&self) -> bool {
        self.best.load(Ordering::Relaxed) < self.index
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn map_preserves_order() {
        for exec in [Exec::Sequential, Exec::Parallel, Exec::ParallelWith(3)] {
            let out = exec.map((0..100).collect(), |x: i32| x * x);
            assert_eq!(out, (0..100).map(|x| x * x).collect::<Vec<_>>());
        }
    }

    #[test]
    fn find_first_is_leftmost() {
        for exec in [Exec::Sequential, Exec::Parallel, Exec::ParallelWith(8)] {
            let hit = exec.find_first((0..1000).collect(), |x: i32, _| (x % 7 == 3 && x > 50).then_some(x));
            assert_eq!(hit, Some(52));
            let none = exec.find_first((0..10).collect(), |_: i32, _| None::<i32>);
            assert_eq!(none, None);
        }
    }

    #[test]
    fn worker_count_mapping() {
        assert_eq!(Exec::from_workers(None), Exec::Parallel);
        assert_eq!(Exec::from_workers(Some(1)), Exec::Sequential);
        assert_eq!(Exec::from_workers(Some(4)), Exec::ParallelWith(4));
    }
}
