//! Data-parallel helpers. With the `parallel` feature the batch loops run on
//! the rayon pool; without it, or with [`Execution::Sequential`], they run on
//! the calling thread. Results are returned in input order either way.

/// How a batch loop is executed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    /// Uses rayon when the `parallel` feature is enabled.
    #[default]
    Parallel,
}

impl Execution {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }
}

/// Maps `f` over `0..n`, preserving order.
pub fn map_range<R, F>(exec: Execution, n: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return (0..n).into_par_iter().map(f).collect();
    }
    let _ = exec;
    (0..n).map(f).collect()
}

/// Maps `f` over a slice, preserving order.
pub fn map_slice<T, R, F>(exec: Execution, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return items.par_iter().map(f).collect();
    }
    let _ = exec;
    items.iter().map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_modes_agree() {
        let seq = map_range(Execution::Sequential, 100, |i| i * i);
        let par = map_range(Execution::Parallel, 100, |i| i * i);
        assert_eq!(seq, par);
        let xs: Vec<u32> = (0..50).collect();
        assert_eq!(
            map_slice(Execution::Sequential, &xs, |x| x + 1),
            map_slice(Execution::Parallel, &xs, |x| x + 1)
        );
    }
}
