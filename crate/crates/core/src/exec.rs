//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature (default) the batch operations in this crate
//! fan out over rayon's global pool. Without it, or with
//! [`Execution::Sequential`], they run on the calling thread. Both modes
//! produce identical, deterministically ordered output.

/// How a batch operation should run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Execution {
    Sequential,
    Parallel,
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

impl Execution {
    /// Whether work will actually be spread across threads.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }

    /// Order-preserving map.
    pub fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            use rayon::prelude::*;
            return items.par_iter().map(f).collect();
        }
        items.iter().map(f).collect()
    }

    /// Order-preserving flat map; `min_parallel` is the batch size below
    /// which the sequential path is always used.
    pub fn flat_map<T, R, F>(self, items: &[T], min_parallel: usize, f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> Vec<R> + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() && items.len() >= min_parallel {
            use rayon::prelude::*;
            return items.par_iter().flat_map_iter(f).collect();
        }
        let _ = min_parallel;
        items.iter().flat_map(f).collect()
    }
}
