//! Data-parallel helpers. With the `parallel` feature these fan out over the
//! rayon pool; without it they run sequentially. Results are always in input
//! order.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Maps `f` over `items`, keeping order.
pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
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

/// Maps `f` over `0..n`, keeping order.
pub fn range_map<R, F>(n: u64, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(u64) -> R + Sync + Send,
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

/// The smallest `i < n` for which `f` returns `Some`, with its value.
pub fn find_first<R, F>(n: u64, f: F) -> Option<(u64, R)>
where
    R: Send,
    F: Fn(u64) -> Option<R> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().filter_map(|i| f(i).map(|r| (i, r))).find_first(|_| true)
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).find_map(|i| f(i).map(|r| (i, r)))
    }
}

/// Sums `f` over `0..n`.
pub fn range_sum<F>(n: u64, f: F) -> u64
where
    F: Fn(u64) -> u64 + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().map(f).sum()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).sum()
    }
}

/// Runs `op` on a pool with `jobs` workers. `None` or `0` uses the global
/// pool. Sequential builds ignore `jobs`.
pub fn install<R: Send>(jobs: Option<usize>, op: impl FnOnce() -> R + Send) -> R {
    #[cfg(feature = "parallel")]
    {
        match jobs {
            Some(n) if n > 0 => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
                Ok(pool) => pool.install(op),
                Err(_) => op(),
            },
            _ => op(),
        }
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = jobs;
        op()
    }
}

pub fn is_parallel() -> bool {
    cfg!(feature = "parallel")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_preserved() {
        let v: Vec<u64> = (0..1000).collect();
        assert_eq!(map(&v, |x| x * 2), (0..1000).map(|x| x * 2).collect::<Vec<_>>());
        assert_eq!(range_map(5, |i| i + 1), vec![1, 2, 3, 4, 5]);
    }

    #[test]
    fn find_first_is_leftmost() {
        let hit = find_first(10_000, |i| (i % 7 == 3 && i > 100).then_some(i * 10));
        assert_eq!(hit, Some((101, 1010)));
        assert_eq!(find_first(10, |_| None::<()>), None);
        assert_eq!(install(Some(1), || range_sum(4, |i| i)), 6);
    }
}
