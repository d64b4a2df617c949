//! Vertex partitioning and the bulk-synchronous worker pool.
//!
//! Every kernel writes disjoint per-range slices and reads only buffers from
//! the previous round, so the arithmetic for a vertex never depends on the
//! worker count. Reductions go through [`stable_sum`], whose grouping is
//! fixed by [`SUM_BLOCK`] rather than by the partition.

use std::ops::Range;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::UndirectedGraph;

/// Block length used by every deterministic reduction.
pub const SUM_BLOCK: usize = 4096;

/// Splits `0..n` into `workers` contiguous ranges whose degree sums are as
/// close to `total / workers` as contiguous boundaries allow. Boundary `j` is
/// placed where the degree prefix sum is nearest to `j * total / workers`.
/// More workers than vertices yields empty ranges.
pub fn partition_vertices(g: &UndirectedGraph, workers: usize) -> Vec<Range<usize>> {
    let workers = workers.max(1);
    let n = g.n();
    let mut prefix = Vec::with_capacity(n + 1);
    prefix.push(0u64);
    for &d in g.degrees() {
        prefix.push(prefix.last().unwrap() + u64::from(d));
    }
    let total = prefix[n] as f64;

    let mut ranges = Vec::with_capacity(workers);
    let mut start = 0usize;
    for j in 1..workers {
        let target = total * j as f64 / workers as f64;
        // first index whose prefix reaches the target; the nearest boundary
        // is either it or its predecessor
        let hi = prefix.partition_point(|&p| (p as f64) < target).min(n);
        let mut cut = hi;
        if hi > 0 && target - prefix[hi - 1] as f64 <= prefix[hi] as f64 - target {
            cut = hi - 1;
        }
        let cut = cut.max(start);
        ranges.push(start..cut);
        start = cut;
    }
    ranges.push(start..n);
    ranges
}

/// Deterministic sum: fixed-size blocks summed left to right, then the
/// block totals summed in order.
pub fn stable_sum(values: &[f64]) -> f64 {
    values
        .chunks(SUM_BLOCK)
        .map(|c| c.iter().sum::<f64>())
        .sum()
}

/// Splits `data` into consecutive mutable slices matching `ranges`.
pub(crate) fn split_by_ranges<'a, T>(mut data: &'a mut [T], ranges: &[Range<usize>]) -> Vec<&'a mut [T]> {
    let mut out = Vec::with_capacity(ranges.len());
    for r in ranges {
        let (head, tail) = std::mem::take(&mut data).split_at_mut(r.len());
        out.push(head);
        data = tail;
    }
    out
}

/// `K` workers bound to a fixed partition. `K = 1` runs on the calling
/// thread.
pub(crate) struct Workers {
    pool: Option<rayon::ThreadPool>,
    ranges: Vec<Range<usize>>,
}

impl Workers {
    pub fn new(g: &UndirectedGraph, parallelism: usize) -> Result<Self> {
        if parallelism == 0 {
            return Err(Error::Config("parallelism must be at least 1".into()));
        }
        let pool = if parallelism > 1 {
            Some(
                rayon::ThreadPoolBuilder::new()
                    .num_threads(parallelism)
                    .build()
                    .map_err(|e| Error::Config(format!("cannot start {parallelism} workers: {e}")))?,
            )
        } else {
            None
        };
        Ok(Self {
            pool,
            ranges: partition_vertices(g, parallelism),
        })
    }

    pub fn ranges(&self) -> &[Range<usize>] {
        &self.ranges
    }

    /// Runs one task per range and returns once all have finished.
    pub fn run<T, F>(&self, tasks: Vec<T>, f: F)
    where
        T: Send,
        F: Fn(T) + Sync + Send,
    {
        match &self.pool {
            None => tasks.into_iter().for_each(f),
            Some(pool) => pool.install(|| tasks.into_par_iter().for_each(f)),
        }
    }

    /// Same grouping and result as [`stable_sum`] of `map` over `0..len`.
    pub fn sum_by<F>(&self, len: usize, map: F) -> f64
    where
        F: Fn(usize) -> f64 + Sync + Send,
    {
        let block = |b: usize| {
            let lo = b * SUM_BLOCK;
            (lo..len.min(lo + SUM_BLOCK)).map(&map).sum::<f64>()
        };
        let blocks = len.div_ceil(SUM_BLOCK);
        let partials: Vec<f64> = match &self.pool {
            None => (0..blocks).map(block).collect(),
            Some(pool) => pool.install(|| (0..blocks).into_par_iter().map(block).collect()),
        };
        partials.iter().sum()
    }
}
