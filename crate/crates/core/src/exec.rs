//! Execution mode for the batch operations (sampling, conjugacy grids,
//! enumeration sweeps).
//!
//! With the `parallel` feature (on by default) work is spread over the rayon
//! pool; without it every call runs on the current thread. Results never
//! depend on the mode: parallel paths collect in input order.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    #[cfg(feature = "parallel")]
    Parallel,
}

impl Default for Exec {
    fn default() -> Self {
        #[cfg(feature = "parallel")]
        {
            Exec::Parallel
        }
        #[cfg(not(feature = "parallel"))]
        {
            Exec::Sequential
        }
    }
}

impl Exec {
    /// Maps `f` over `items`, preserving order.
    pub fn map<T, U, F>(self, items: Vec<T>, f: F) -> Vec<U>
    where
        T: Send,
        U: Send,
        F: Fn(T) -> U + Send + Sync,
    {
        match self {
            Exec::Sequential => items.into_iter().map(f).collect(),
            #[cfg(feature = "parallel")]
            Exec::Parallel => items.into_par_iter().map(f).collect(),
        }
    }

    /// Maps `f` over `0..n`, preserving order.
    pub fn map_range<U, F>(self, n: usize, f: F) -> Vec<U>
    where
        U: Send,
        F: Fn(usize) -> U + Send + Sync,
    {
        match self {
            Exec::Sequential => (0..n).map(f).collect(),
            #[cfg(feature = "parallel")]
            Exec::Parallel => (0..n).into_par_iter().map(f).collect(),
        }
    }

    /// First item (in input order) for which `f` returns `Some`.
    pub fn find_map_first<T, U, F>(self, items: Vec<T>, f: F) -> Option<U>
    where
        T: Send,
        U: Send,
        F: Fn(T) -> Option<U> + Send + Sync,
    {
        match self {
            Exec::Sequential => items.into_iter().find_map(f),
            #[cfg(feature = "parallel")]
            Exec::Parallel => items.into_par_iter().find_map_first(f),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_agree() {
        let seq = Exec::Sequential.map_range(100, |i| i * i);
        let def = Exec::default().map_range(100, |i| i * i);
        assert_eq!(seq, def);
        let first = Exec::default().find_map_first((0..50).collect(), |i: u32| {
            (i % 7 == 3).then_some(i)
        });
        assert_eq!(first, Some(3));
    }
}
