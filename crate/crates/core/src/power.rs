//! Power-method baselines: `x <- c P x + (1 - c)/n e` from `x_0 = e/n`.
//!
//! Undirected graphs have no dangling vertices, so there is no
//! redistribution term. The parallel variant uses the same partition and
//! per-round barrier as the Chebyshev solver and is bit-identical to the
//! serial one.

use std::ops::Range;
use std::time::{Duration, Instant};

use crate::cpaa::normalize;
use crate::error::{Error, Result};
use crate::graph::UndirectedGraph;
use crate::metrics::max_relative_error;
use crate::parallel::{split_by_ranges, Workers};
use crate::trace::{PageRankResult, RoundDetail, RoundRecord, Tracking};

/// Round count of the ground-truth vector every error is measured against.
pub const REFERENCE_ROUNDS: usize = 210;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PowerStop {
    Rounds(usize),
    /// Stop once the L1 change of a round falls below `tol`.
    Tolerance { tol: f64, max_rounds: usize },
}

#[derive(Clone, Debug, PartialEq)]
pub struct PowerConfig {
    pub damping: f64,
    pub stop: PowerStop,
    pub parallelism: usize,
}

impl PowerConfig {
    pub fn rounds(damping: f64, rounds: usize) -> Self {
        Self {
            damping,
            stop: PowerStop::Rounds(rounds),
            parallelism: 1,
        }
    }

    pub fn with_parallelism(mut self, parallelism: usize) -> Self {
        self.parallelism = parallelism;
        self
    }

    fn check(&self) -> Result<()> {
        if !(self.damping > 0.0 && self.damping < 1.0) {
            return Err(Error::Domain {
                name: "damping factor",
                value: self.damping,
                expected: "(0, 1)",
            });
        }
        if self.parallelism == 0 {
            return Err(Error::Config("parallelism must be at least 1".into()));
        }
        if let PowerStop::Tolerance { tol, .. } = self.stop {
            if tol.is_nan() || tol <= 0.0 {
                return Err(Error::Config(format!("tolerance must be positive, got {tol}")));
            }
        }
        Ok(())
    }
}

fn step_range(
    g: &UndirectedGraph,
    range: Range<usize>,
    scaled: &[f64],
    damping: f64,
    teleport: f64,
    next: &mut [f64],
    scaled_next: &mut [f64],
) {
    for (i, u) in range.enumerate() {
        let x = damping * g.gather(u, scaled) + teleport;
        next[i] = x;
        scaled_next[i] = x / f64::from(g.degree(u));
    }
}

pub fn run_power(g: &UndirectedGraph, cfg: &PowerConfig) -> Result<PageRankResult> {
    run_power_tracked(g, cfg, None)
}

pub fn run_power_tracked(
    g: &UndirectedGraph,
    cfg: &PowerConfig,
    tracking: Option<Tracking<'_>>,
) -> Result<PageRankResult> {
    g.ensure_valid()?;
    cfg.check()?;
    if let Some(t) = &tracking {
        if t.reference.len() != g.n() {
            return Err(Error::LengthMismatch {
                expected: g.n(),
                actual: t.reference.len(),
            });
        }
    }
    let (max_rounds, tol) = match cfg.stop {
        PowerStop::Rounds(r) => (r, None),
        PowerStop::Tolerance { tol, max_rounds } => (max_rounds, Some(tol)),
    };
    let workers = Workers::new(g, cfg.parallelism)?;
    let n = g.n();
    let teleport = (1.0 - cfg.damping) / n as f64;

    let mut x = vec![1.0 / n as f64; n];
    let mut scaled = g.scale_by_degree(&x);
    let mut next = vec![0.0; n];
    let mut scaled_next = vec![0.0; n];
    let mut trace = Vec::with_capacity(max_rounds);
    let mut elapsed = Duration::ZERO;

    for k in 1..=max_rounds {
        let started = Instant::now();
        {
            let ranges = workers.ranges();
            let scaled = scaled.as_slice();
            let tasks: Vec<_> = ranges
                .iter()
                .cloned()
                .zip(split_by_ranges(&mut next, ranges))
                .zip(split_by_ranges(&mut scaled_next, ranges))
                .collect();
            workers.run(tasks, |((range, next), scaled_next)| {
                step_range(g, range, scaled, cfg.damping, teleport, next, scaled_next);
            });
        }
        let l1_change = workers.sum_by(n, |u| (next[u] - x[u]).abs());
        let mass = workers.sum_by(n, |u| next[u]);
        if !mass.is_finite() {
            return Err(Error::Numeric(format!("non-finite value in round {k}")));
        }
        std::mem::swap(&mut x, &mut next);
        std::mem::swap(&mut scaled, &mut scaled_next);
        elapsed += started.elapsed();

        let err = match &tracking {
            Some(t) => Some(max_relative_error(&normalize(&x)?, t.reference)?.max_rel_err),
            None => None,
        };
        trace.push(RoundRecord {
            round: k,
            elapsed,
            err,
            detail: RoundDetail::Power { l1_change, mass },
        });
        let tracked_stop = matches!((err, tracking.and_then(|t| t.stop_below)), (Some(e), Some(l)) if e < l);
        if tracked_stop || tol.is_some_and(|t| l1_change < t) {
            break;
        }
    }

    Ok(PageRankResult {
        ranks: normalize(&x)?,
        rounds: trace.len(),
        trace,
        elapsed,
    })
}

/// Serial Power method at exactly [`REFERENCE_ROUNDS`] rounds.
pub fn reference_pagerank(g: &UndirectedGraph, damping: f64) -> Result<Vec<f64>> {
    run_power(g, &PowerConfig::rounds(damping, REFERENCE_ROUNDS)).map(|r| r.ranks)
}
