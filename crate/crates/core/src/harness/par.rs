//! Order-preserving map over independent work items.
//!
//! With the `parallel` feature the items run on a rayon pool of `jobs`
//! threads; without it, or with one job, they run in a plain loop.

/// Number of worker threads the pool would use for `jobs`.
pub fn effective_jobs(jobs: Option<usize>) -> usize {
    match jobs {
        Some(j) if j > 0 => j,
        _ => default_jobs(),
    }
}

#[cfg(feature = "parallel")]
fn default_jobs() -> usize {
    rayon::current_num_threads()
}

#[cfg(not(feature = "parallel"))]
fn default_jobs() -> usize {
    1
}

/// `items.iter().enumerate().map(f)`, results in input order.
pub fn par_map<T, R, F>(items: &[T], jobs: Option<usize>, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(usize, &T) -> R + Sync + Send,
{
    if effective_jobs(jobs) <= 1 {
        return seq_map(items, f);
    }
    parallel_map(items, jobs, f)
}

/// The sequential path, always available.
pub fn seq_map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    F: Fn(usize, &T) -> R,
{
    items.iter().enumerate().map(|(i, t)| f(i, t)).collect()
}

#[cfg(feature = "parallel")]
fn parallel_map<T, R, F>(items: &[T], jobs: Option<usize>, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(usize, &T) -> R + Sync + Send,
{
    use rayon::prelude::*;
    let run = || items.par_iter().enumerate().map(|(i, t)| f(i, t)).collect();
    match jobs {
        Some(j) => match rayon::ThreadPoolBuilder::new().num_threads(j).build() {
            Ok(pool) => pool.install(run),
            Err(_) => seq_map(items, &f),
        },
        None => run(),
    }
}

#[cfg(not(feature = "parallel"))]
fn parallel_map<T, R, F>(items: &[T], _jobs: Option<usize>, f: F) -> Vec<R>
where
    F: Fn(usize, &T) -> R,
{
    seq_map(items, f)
}
