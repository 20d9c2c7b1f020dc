//! Sequential and data-parallel execution of the sweeps.

/// How a sweep is executed. `Parallel` falls back to sequential when the
/// crate is built without the `parallel` feature.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Sequential,
    Parallel,
}

impl Default for Strategy {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Strategy::Parallel
        } else {
            Strategy::Sequential
        }
    }
}

/// `filter_map` over a slice, keeping input order in the output.
pub fn filter_map<T, U, F>(items: &[T], strategy: Strategy, f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> Option<U> + Sync + Send,
{
    match strategy {
        #[cfg(feature = "parallel")]
        Strategy::Parallel => {
            use rayon::prelude::*;
            items.par_iter().filter_map(f).collect()
        }
        _ => items.iter().filter_map(f).collect(),
    }
}

/// Runs `f` on a pool of `jobs` threads, or on the global pool when `jobs`
/// is `None`.
pub fn with_jobs<R, F>(jobs: Option<usize>, f: F) -> R
where
    R: Send,
    F: FnOnce() -> R + Send,
{
    #[cfg(feature = "parallel")]
    if let Some(n) = jobs {
        if let Ok(pool) = rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
        {
            return pool.install(f);
        }
    }
    let _ = jobs;
    f()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strategies_agree() {
        let xs: Vec<u32> = (0..1000).collect();
        let f = |x: &u32| x.is_multiple_of(7).then_some(x * 2);
        assert_eq!(
            filter_map(&xs, Strategy::Sequential, f),
            filter_map(&xs, Strategy::Parallel, f)
        );
        assert_eq!(with_jobs(Some(2), || 5), 5);
    }
}
