//! PageRank on undirected graphs by truncated Chebyshev expansion, with a
//! Power-method baseline and dense oracles for checking both.
//!
//! ```
//! use cpaa::{generate_graph, run_cpaa, Model, SolverConfig, StopRule};
//!
//! let g = generate_graph(Model::Star, 5, 0).unwrap();
//! let r = run_cpaa(&g, &SolverConfig::new(0.85, StopRule::TargetError(1e-10))).unwrap();
//! assert!(r.ranks[0] > r.ranks[1]);
//! assert!((r.ranks.iter().sum::<f64>() - 1.0).abs() < 1e-12);
//! ```

pub mod chebyshev;
pub mod compare;
pub mod cpaa;
pub mod error;
pub mod generate;
pub mod graph;
pub mod metrics;
pub mod output;
pub mod parallel;
pub mod power;
pub mod trace;

pub use chebyshev::{beta, coefficients, err_bound, plan_iterations, sigma, ApproxPlan, CoefficientTable};
pub use compare::{compare, Algorithm, CompareConfig, CompareRow, Comparison};
pub use cpaa::{run_cpaa, run_cpaa_tracked, SolverConfig, StopRule, DEFAULT_DAMPING, DEFAULT_MAX_ROUNDS};
pub use error::{Error, Result};
pub use generate::{generate, generate_graph, Model};
pub use graph::{load_graph, BuildOptions, GraphFormat, GraphStats, LoadOptions, Loaded, UndirectedGraph};
pub use metrics::{dense_direct_solve, max_relative_error, symmetry_similarity_check, ErrorReport};
pub use power::{reference_pagerank, run_power, run_power_tracked, PowerConfig, PowerStop, REFERENCE_ROUNDS};
pub use trace::{PageRankResult, RoundDetail, RoundRecord, Tracking};
