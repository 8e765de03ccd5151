//! Data-parallel helpers. With the `parallel` feature off everything here
//! runs on the calling thread and `Parallelism::Parallel` behaves like
//! `Sequential`.

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parallelism {
    Sequential,
    /// `threads == 0` uses the global rayon pool.
    Parallel { threads: usize },
}

impl Default for Parallelism {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Parallelism::Parallel { threads: 0 }
        } else {
            Parallelism::Sequential
        }
    }
}

impl Parallelism {
    pub fn from_threads(threads: usize) -> Self {
        if threads == 1 {
            Parallelism::Sequential
        } else {
            Parallelism::Parallel { threads }
        }
    }

    pub fn is_parallel(&self) -> bool {
        cfg!(feature = "parallel") && matches!(self, Parallelism::Parallel { .. })
    }

    pub fn current_threads(&self) -> usize {
        match self {
            Parallelism::Sequential => 1,
            #[cfg(feature = "parallel")]
            Parallelism::Parallel { threads: 0 } => rayon::current_num_threads(),
            Parallelism::Parallel { threads } => {
                if cfg!(feature = "parallel") {
                    *threads
                } else {
                    1
                }
            }
        }
    }
}

/// Order-preserving map over `items`.
pub fn map_collect<T, R, F>(mode: Parallelism, items: Vec<T>, f: F) -> Vec<R>
where
    T: Send,
    R: Send,
    F: Fn(T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if let Parallelism::Parallel { threads } = mode {
        use rayon::prelude::*;
        let run = || items.into_par_iter().map(&f).collect();
        if threads == 0 {
            return run();
        }
        return match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
            Ok(pool) => pool.install(run),
            Err(_) => run(),
        };
    }
    let _ = mode;
    items.into_iter().map(f).collect()
}
