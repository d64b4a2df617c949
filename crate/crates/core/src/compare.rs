//! Rounds-to-accuracy comparison of the Chebyshev solver and the Power
//! method against a shared 210-round Power reference.

use std::time::Duration;

use crate::cpaa::{run_cpaa_tracked, SolverConfig, StopRule, DEFAULT_MAX_ROUNDS};
use crate::error::{Error, Result};
use crate::graph::UndirectedGraph;
use crate::metrics::{max_relative_error, ErrorReport};
use crate::power::{reference_pagerank, run_power_tracked, PowerConfig, REFERENCE_ROUNDS};
use crate::trace::{PageRankResult, Tracking};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Cpaa,
    Power,
}

impl Algorithm {
    pub fn name(&self) -> &'static str {
        match self {
            Algorithm::Cpaa => "cpaa",
            Algorithm::Power => "power",
        }
    }
}

impl std::str::FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cpaa" => Ok(Algorithm::Cpaa),
            "power" => Ok(Algorithm::Power),
            other => Err(Error::Config(format!("unknown algorithm {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CompareConfig {
    pub damping: f64,
    pub eps: f64,
    pub parallelism: Vec<usize>,
    /// Round budget for the Chebyshev solver.
    pub max_rounds: usize,
    /// Round budget for the Power method.
    pub power_max_rounds: usize,
}

impl CompareConfig {
    pub fn new(damping: f64, eps: f64) -> Self {
        Self {
            damping,
            eps,
            parallelism: vec![1],
            max_rounds: DEFAULT_MAX_ROUNDS,
            power_max_rounds: REFERENCE_ROUNDS,
        }
    }
}

#[derive(Clone, Debug)]
pub struct CompareRow {
    pub algorithm: Algorithm,
    pub parallelism: usize,
    /// First round with error below `eps`, or the rounds run if never reached.
    pub rounds: usize,
    pub reached: bool,
    pub report: ErrorReport,
    /// Kernel time up to and including `rounds`.
    pub elapsed: Duration,
    pub result: PageRankResult,
}

#[derive(Clone, Debug)]
pub struct Comparison {
    pub reference: Vec<f64>,
    pub rows: Vec<CompareRow>,
}

impl Comparison {
    pub fn row(&self, algorithm: Algorithm, parallelism: usize) -> Option<&CompareRow> {
        self.rows
            .iter()
            .find(|r| r.algorithm == algorithm && r.parallelism == parallelism)
    }
}

/// Builds the reference once, then runs each algorithm at each parallelism
/// until its normalized running estimate has max relative error below
/// `eps`.
pub fn compare(g: &UndirectedGraph, cfg: &CompareConfig) -> Result<Comparison> {
    if cfg.eps.is_nan() || cfg.eps <= 0.0 {
        return Err(Error::Config(format!("eps must be positive, got {}", cfg.eps)));
    }
    if cfg.parallelism.is_empty() {
        return Err(Error::Config("no parallelism levels given".into()));
    }
    let reference = reference_pagerank(g, cfg.damping)?;
    let tracking = Tracking {
        reference: &reference,
        stop_below: Some(cfg.eps),
    };
    let mut rows = Vec::with_capacity(2 * cfg.parallelism.len());
    for &k in &cfg.parallelism {
        let cheb = SolverConfig::new(cfg.damping, StopRule::Rounds(cfg.max_rounds))
            .with_parallelism(k)
            .with_max_rounds(cfg.max_rounds);
        let result = run_cpaa_tracked(g, &cheb, Some(tracking))?;
        rows.push(row(Algorithm::Cpaa, k, cfg.eps, &reference, result)?);

        let power = PowerConfig::rounds(cfg.damping, cfg.power_max_rounds).with_parallelism(k);
        let result = run_power_tracked(g, &power, Some(tracking))?;
        rows.push(row(Algorithm::Power, k, cfg.eps, &reference, result)?);
    }
    Ok(Comparison { reference, rows })
}

fn row(
    algorithm: Algorithm,
    parallelism: usize,
    eps: f64,
    reference: &[f64],
    result: PageRankResult,
) -> Result<CompareRow> {
    let hit = result.first_round_below(eps);
    let rounds = hit.unwrap_or(result.rounds);
    let elapsed = result
        .trace
        .iter()
        .find(|r| r.round == rounds)
        .map_or(Duration::ZERO, |r| r.elapsed);
    Ok(CompareRow {
        algorithm,
        parallelism,
        rounds,
        reached: hit.is_some(),
        report: max_relative_error(&result.ranks, reference)?,
        elapsed,
        result,
    })
}
