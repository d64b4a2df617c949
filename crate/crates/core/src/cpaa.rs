//! Chebyshev polynomial approximation PageRank.
//!
//! With `p = e / n` scaled by `n`, the solver builds the Chebyshev vectors
//! `T_k(P) e` by the three-term recurrence
//!
//! ```text
//! T_1 = P T_0,    T_{k+1} = 2 P T_k - T_{k-1},    T_0 = e
//! ```
//!
//! and accumulates `acc = (c_0/2) T_0 + sum_k c_k T_k`. The normalized
//! accumulator is the PageRank vector. Each round is one bulk-synchronous
//! pass: every worker generates and accumulates its own vertex range,
//! reading only the two previous vectors, then the buffers rotate.

use std::ops::Range;
use std::time::{Duration, Instant};

use crate::chebyshev::{coefficients, plan_iterations};
use crate::error::{Error, Result};
use crate::graph::UndirectedGraph;
use crate::metrics::max_relative_error;
use crate::parallel::{split_by_ranges, stable_sum, Workers};
use crate::trace::{PageRankResult, RoundDetail, RoundRecord, Tracking};

pub const DEFAULT_DAMPING: f64 = 0.85;

/// Rounds beyond ~50 cannot move a 64-bit accumulator at `c = 0.85`.
pub const DEFAULT_MAX_ROUNDS: usize = 60;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum StopRule {
    Rounds(usize),
    /// Resolved to the smallest round count whose whole-graph error bound
    /// is at most the target.
    TargetError(f64),
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolverConfig {
    pub damping: f64,
    pub stop: StopRule,
    pub parallelism: usize,
    pub max_rounds: usize,
}

impl SolverConfig {
    pub fn new(damping: f64, stop: StopRule) -> Self {
        Self {
            damping,
            stop,
            parallelism: 1,
            max_rounds: DEFAULT_MAX_ROUNDS,
        }
    }

    pub fn with_parallelism(mut self, parallelism: usize) -> Self {
        self.parallelism = parallelism;
        self
    }

    pub fn with_max_rounds(mut self, max_rounds: usize) -> Self {
        self.max_rounds = max_rounds;
        self
    }

    pub fn resolve_rounds(&self) -> Result<usize> {
        if self.parallelism == 0 {
            return Err(Error::Config("parallelism must be at least 1".into()));
        }
        let rounds = match self.stop {
            StopRule::Rounds(m) => m,
            StopRule::TargetError(eps) => plan_iterations(self.damping, eps)?.rounds,
        };
        if rounds > self.max_rounds {
            return Err(Error::Config(format!(
                "{rounds} rounds exceed the cap of {}; raise the round cap to allow it",
                self.max_rounds
            )));
        }
        Ok(rounds)
    }
}

/// Per-vertex buffers of the iteration: the two most recent Chebyshev
/// vectors, the one being generated, and the accumulator.
#[derive(Clone, Debug)]
pub struct IterationState {
    prev: Vec<f64>,
    curr: Vec<f64>,
    next: Vec<f64>,
    scaled_curr: Vec<f64>,
    scaled_next: Vec<f64>,
    acc: Vec<f64>,
    round: usize,
}

impl IterationState {
    /// Round-0 state: `T_0 = e` and `acc = (c_0/2) e`.
    pub fn new(g: &UndirectedGraph, c0: f64) -> Self {
        let n = g.n();
        let curr = vec![1.0; n];
        Self {
            prev: vec![0.0; n],
            scaled_curr: g.scale_by_degree(&curr),
            curr,
            next: vec![0.0; n],
            scaled_next: vec![0.0; n],
            acc: vec![0.5 * c0; n],
            round: 0,
        }
    }

    /// State positioned after round `round`, with `curr = T_round` and
    /// `prev = T_{round-1}`.
    pub fn from_parts(
        g: &UndirectedGraph,
        round: usize,
        prev: Vec<f64>,
        curr: Vec<f64>,
        acc: Vec<f64>,
    ) -> Result<Self> {
        let n = g.n();
        for v in [&prev, &curr, &acc] {
            if v.len() != n {
                return Err(Error::LengthMismatch {
                    expected: n,
                    actual: v.len(),
                });
            }
        }
        Ok(Self {
            scaled_curr: g.scale_by_degree(&curr),
            prev,
            curr,
            next: vec![0.0; n],
            scaled_next: vec![0.0; n],
            acc,
            round,
        })
    }

    pub fn prev(&self) -> &[f64] {
        &self.prev
    }

    pub fn curr(&self) -> &[f64] {
        &self.curr
    }

    pub fn next(&self) -> &[f64] {
        &self.next
    }

    pub fn acc(&self) -> &[f64] {
        &self.acc
    }

    pub fn round(&self) -> usize {
        self.round
    }

    /// `prev <- curr`, `curr <- next`; the old `prev` becomes scratch.
    pub fn rotate(&mut self) {
        std::mem::swap(&mut self.prev, &mut self.curr);
        std::mem::swap(&mut self.curr, &mut self.next);
        std::mem::swap(&mut self.scaled_curr, &mut self.scaled_next);
        self.round += 1;
    }
}

fn generate_range(
    g: &UndirectedGraph,
    range: Range<usize>,
    scaled_curr: &[f64],
    prev: Option<&[f64]>,
    next: &mut [f64],
    scaled_next: &mut [f64],
) {
    for (i, u) in range.enumerate() {
        let pushed = g.gather(u, scaled_curr);
        let t = match prev {
            None => pushed,
            Some(prev) => 2.0 * pushed - prev[u],
        };
        next[i] = t;
        scaled_next[i] = t / f64::from(g.degree(u));
    }
}

fn accumulate_range(acc: &mut [f64], next: &[f64], coefficient: f64) {
    for (a, &t) in acc.iter_mut().zip(next) {
        *a += coefficient * t;
    }
}

/// Mass-generating stage of round `k`: fills `next` with `P curr` for
/// `k = 1` and `2 P curr - prev` for `k >= 2`.
pub fn generate_stage(g: &UndirectedGraph, state: &mut IterationState, k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::Config("rounds are numbered from 1".into()));
    }
    if state.curr.len() != g.n() {
        return Err(Error::LengthMismatch {
            expected: g.n(),
            actual: state.curr.len(),
        });
    }
    let IterationState {
        prev,
        next,
        scaled_curr,
        scaled_next,
        ..
    } = state;
    let prev = (k >= 2).then_some(prev.as_slice());
    generate_range(g, 0..g.n(), scaled_curr, prev, next, scaled_next);
    Ok(())
}

/// Mass-accumulating stage: `acc += coefficient * next`.
pub fn accumulate_stage(state: &mut IterationState, coefficient: f64) {
    accumulate_range(&mut state.acc, &state.next, coefficient);
}

/// `acc / sum(acc)`, with the sum taken in fixed block order.
pub fn normalize(acc: &[f64]) -> Result<Vec<f64>> {
    let total = stable_sum(acc);
    if !total.is_finite() || total == 0.0 {
        return Err(Error::Numeric(format!("cannot normalize a vector summing to {total}")));
    }
    Ok(acc.iter().map(|&a| a / total).collect())
}

pub fn run_cpaa(g: &UndirectedGraph, cfg: &SolverConfig) -> Result<PageRankResult> {
    run_cpaa_tracked(g, cfg, None)
}

/// [`run_cpaa`] that also scores every round against a reference vector.
pub fn run_cpaa_tracked(
    g: &UndirectedGraph,
    cfg: &SolverConfig,
    tracking: Option<Tracking<'_>>,
) -> Result<PageRankResult> {
    g.ensure_valid()?;
    let rounds = cfg.resolve_rounds()?;
    let table = coefficients(cfg.damping, rounds)?;
    if let Some(t) = &tracking {
        if t.reference.len() != g.n() {
            return Err(Error::LengthMismatch {
                expected: g.n(),
                actual: t.reference.len(),
            });
        }
    }
    let workers = Workers::new(g, cfg.parallelism)?;
    let n = g.n();
    let mass_scale = n as f64;

    let mut state = IterationState::new(g, table.c0);
    let mut trace = Vec::with_capacity(rounds);
    let mut elapsed = Duration::ZERO;
    let mut partial = 0.5 * table.c0;

    for k in 1..=rounds {
        let started = Instant::now();
        let coefficient = table.coefficient(k);
        {
            let IterationState {
                prev,
                next,
                scaled_curr,
                scaled_next,
                acc,
                ..
            } = &mut state;
            let prev = (k >= 2).then_some(prev.as_slice());
            let scaled_curr = scaled_curr.as_slice();
            let ranges = workers.ranges();
            let tasks: Vec<_> = ranges
                .iter()
                .cloned()
                .zip(split_by_ranges(next, ranges))
                .zip(split_by_ranges(scaled_next, ranges))
                .zip(split_by_ranges(acc, ranges))
                .collect();
            workers.run(tasks, |(((range, next), scaled_next), acc)| {
                generate_range(g, range, scaled_curr, prev, next, scaled_next);
                accumulate_range(acc, next, coefficient);
            });
        }
        let vector_mass = workers.sum_by(n, |u| state.next[u]);
        let accumulator_mass = workers.sum_by(n, |u| state.acc[u]);
        if !vector_mass.is_finite() || !accumulator_mass.is_finite() {
            return Err(Error::Numeric(format!("non-finite value in round {k}")));
        }
        state.rotate();
        elapsed += started.elapsed();

        partial += coefficient;
        let err = match &tracking {
            Some(t) => Some(max_relative_error(&normalize(&state.acc)?, t.reference)?.max_rel_err),
            None => None,
        };
        trace.push(RoundRecord {
            round: k,
            elapsed,
            err,
            detail: RoundDetail::Chebyshev {
                coefficient,
                accumulated_mass: mass_scale * partial,
                residual_mass: mass_scale * table.tail(k),
                vector_mass,
                accumulator_mass,
            },
        });
        if let (Some(e), Some(Some(limit))) = (err, tracking.map(|t| t.stop_below)) {
            if e < limit {
                break;
            }
        }
    }

    Ok(PageRankResult {
        ranks: normalize(&state.acc)?,
        rounds: trace.len(),
        trace,
        elapsed,
    })
}
