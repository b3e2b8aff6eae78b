//! Parallel iteration facade.
//!
//! With the `parallel` feature (default) this re-exports the rayon traits the
//! crate uses. Without it, the same method names resolve to sequential
//! `std::iter` adaptors, so exhaustive scans are written once.

#[cfg(feature = "parallel")]
pub use rayon::prelude::{IntoParallelIterator, IntoParallelRefIterator, ParallelIterator};

#[cfg(not(feature = "parallel"))]
pub use self::fallback::*;

#[cfg(not(feature = "parallel"))]
mod fallback {
    pub use std::iter::Iterator as ParallelIterator;

    pub trait IntoParallelIterator {
        type Item;
        type Iter: Iterator<Item = Self::Item>;
        fn into_par_iter(self) -> Self::Iter;
    }

    impl<I: IntoIterator> IntoParallelIterator for I {
        type Item = I::Item;
        type Iter = I::IntoIter;
        fn into_par_iter(self) -> Self::Iter {
            self.into_iter()
        }
    }

    pub trait IntoParallelRefIterator<'data> {
        type Item;
        type Iter: Iterator<Item = Self::Item>;
        fn par_iter(&'data self) -> Self::Iter;
    }

    impl<'data, I: 'data + ?Sized> IntoParallelRefIterator<'data> for I
    where
        &'data I: IntoIterator,
    {
        type Item = <&'data I as IntoIterator>::Item;
        type Iter = <&'data I as IntoIterator>::IntoIter;
        fn par_iter(&'data self) -> Self::Iter {
            self.into_iter()
        }
    }

    /// Rayon's `find_first` on plain iterators.
    pub trait FindFirst: Iterator + Sized {
        fn find_first<P>(mut self, predicate: P) -> Option<Self::Item>
        where
            P: Fn(&Self::Item) -> bool,
        {
            self.find(|x| predicate(x))
        }
    }

    impl<I: Iterator> FindFirst for I {}
}

/// Whether this build runs scans on the rayon pool.
pub const PARALLEL: bool = cfg!(feature = "parallel");

/// Caps the global worker count. Must be called before any parallel work;
/// later calls (and sequential builds) are no-ops.
pub fn set_threads(threads: usize) {
    #[cfg(feature = "parallel")]
    {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads.max(1))
            .build_global();
    }
    #[cfg(not(feature = "parallel"))]
    let _ = threads;
}
