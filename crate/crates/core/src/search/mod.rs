//! Bounded searches. Every infinitary conclusion becomes a search up to an
//! explicit horizon that either returns a re-verified witness or reports
//! [`SearchError::NotFoundWithinHorizon`].

use rayon::prelude::*;
use thiserror::Error;

use crate::largeness::LargenessError;
use crate::tree::TreeError;
use crate::word::WordError;

pub mod builder;
pub mod cdrt;
pub mod coloring;
pub mod csl;
pub mod density;
pub mod dim2;
pub mod embed;
pub mod line;
pub mod prehomog;
pub mod step;

pub use coloring::Coloring;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error("not found within horizon: {0}")]
    NotFoundWithinHorizon(String),
    #[error("no non-empty σ with T(1)·σ ⊆ T(2)")]
    NoConnector,
    #[error("the tree is not monochromatic: {0}")]
    NotMonochromatic(String),
    #[error("domain mismatch: {0}")]
    Domain(String),
    #[error("internal check failed: {0}")]
    CheckFailed(String),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error(transparent)]
    Largeness(#[from] LargenessError),
}

impl SearchError {
    pub fn is_not_found(&self) -> bool {
        matches!(self, SearchError::NotFoundWithinHorizon(_))
    }
}

/// Runs candidate checks on a fixed number of workers. Results never depend
/// on the worker count: the first success in candidate order wins.
pub struct Runner {
    pool: Option<rayon::ThreadPool>,
}

impl Runner {
    pub fn new(workers: usize) -> Self {
        if workers <= 1 {
            return Runner { pool: None };
        }
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .expect("thread pool");
        Runner { pool: Some(pool) }
    }

    pub fn sequential() -> Self {
        Runner { pool: None }
    }

    pub fn workers(&self) -> usize {
        self.pool.as_ref().map_or(1, |p| p.current_num_threads())
    }

    pub fn find_first<T, R, F>(&self, items: &[T], f: F) -> Option<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> Option<R> + Sync + Send,
    {
        match &self.pool {
            None => items.iter().find_map(f),
            Some(pool) => pool.install(|| items.par_iter().find_map_first(f)),
        }
    }

    /// Order-preserving map.
    pub fn map<T, R, F>(&self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        match &self.pool {
            None => items.iter().map(f).collect(),
            Some(pool) => pool.install(|| items.par_iter().map(f).collect()),
        }
    }
}

impl Default for Runner {
    fn default() -> Self {
        Runner::sequential()
    }
}
