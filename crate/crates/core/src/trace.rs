use std::time::Duration;

/// Normalized rank vector plus the per-round record of how it was reached.
#[derive(Clone, Debug)]
pub struct PageRankResult {
    pub ranks: Vec<f64>,
    pub rounds: usize,
    pub trace: Vec<RoundRecord>,
    /// Kernel time summed over all rounds; excludes error tracking.
    pub elapsed: Duration,
}

impl PageRankResult {
    /// First round whose tracked error is strictly below `eps`.
    pub fn first_round_below(&self, eps: f64) -> Option<usize> {
        self.trace
            .iter()
            .find(|r| r.err.is_some_and(|e| e < eps))
            .map(|r| r.round)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RoundRecord {
    /// 1-based round index.
    pub round: usize,
    /// Cumulative kernel time at the end of this round.
    pub elapsed: Duration,
    /// Max relative error of the running estimate, when a reference was given.
    pub err: Option<f64>,
    pub detail: RoundDetail,
}

#[derive(Clone, Debug, PartialEq)]
pub enum RoundDetail {
    Chebyshev {
        coefficient: f64,
        /// `S_k = n (c_0/2 + sum_{i<=k} c_i)`
        accumulated_mass: f64,
        /// `S - S_k = n sum_{i>k} c_i`
        residual_mass: f64,
        /// Measured sum of the newest Chebyshev vector; stays at `n`.
        vector_mass: f64,
        /// Measured sum of the accumulator; tracks `S_k`.
        accumulator_mass: f64,
    },
    Power {
        l1_change: f64,
        mass: f64,
    },
}

/// Reference vector to score each round's running estimate against, and an
/// optional early stop once the error drops below a threshold.
#[derive(Clone, Copy, Debug)]
pub struct Tracking<'a> {
    pub reference: &'a [f64],
    pub stop_below: Option<f64>,
}
