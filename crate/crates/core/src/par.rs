//! Order-preserving data parallelism with a sequential fallback.
//!
//! With the `parallel` feature the work runs on the current rayon pool;
//! without it every helper is a plain loop. Results are identical either way.

/// Evaluates `f(0..n)` and returns the results in index order.
pub fn map_collect<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).collect()
    }
}

/// Maps every item of a slice, preserving order.
pub fn map_slice<I, T, F>(items: &[I], f: F) -> Vec<T>
where
    I: Sync,
    T: Send,
    F: Fn(&I) -> T + Sync + Send,
{
    map_collect(items.len(), |i| f(&items[i]))
}

/// True when the crate was built with rayon support.
pub fn is_parallel() -> bool {
    cfg!(feature = "parallel")
}

/// Number of worker threads the helpers will use.
pub fn threads() -> usize {
    #[cfg(feature = "parallel")]
    {
        rayon::current_num_threads()
    }
    #[cfg(not(feature = "parallel"))]
    {
        1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_preserved() {
        let v = map_collect(1000, |i| i * i);
        assert!(v.iter().enumerate().all(|(i, &x)| x == i * i));
        assert_eq!(map_slice(&[3, 1, 2], |x| x + 1), vec![4, 2, 3]);
    }
}
