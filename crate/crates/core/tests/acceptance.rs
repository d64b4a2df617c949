//! Acceptance criteria, run in order with one PASS/FAIL line each.
//!
//! `cargo test -p cpaa --test acceptance`

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cpaa::chebyshev::coefficients_quadrature;
use cpaa::output::write_ranks;
use cpaa::{
    beta, coefficients, compare, dense_direct_solve, err_bound, generate, generate_graph,
    max_relative_error, plan_iterations, run_cpaa, run_power, sigma, symmetry_similarity_check,
    Algorithm, BuildOptions, CompareConfig, Model, PageRankResult, PowerConfig, RoundDetail,
    SolverConfig, StopRule, UndirectedGraph,
};

const C: f64 = 0.85;
const DESK_N: usize = 100_000;
const LARGE_N: usize = 1_000_000;

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Self {
            pass,
            detail: detail.into(),
        }
    }
}

/// Every CPAA trace produced by criteria 4 and 5, with its damping factor
/// and vertex count, for the trace-level checks of criteria 6 and 9.
#[derive(Default)]
struct Traces {
    runs: Vec<(String, usize, f64, PageRankResult)>,
}

impl Traces {
    fn keep(&mut self, label: impl Into<String>, n: usize, c: f64, r: &PageRankResult) {
        self.runs.push((label.into(), n, c, r.clone()));
    }
}

fn criterion_1() -> Outcome {
    let mut worst = 0.0f64;
    for c in [0.5, 0.85, 0.99] {
        let closed = coefficients(c, 60).unwrap();
        let quad = coefficients_quadrature(c, 60, 1e-12).unwrap();
        for (a, b) in closed.coeffs.iter().zip(&quad.coeffs) {
            worst = worst.max((a - b).abs());
        }
    }
    Outcome::new(worst <= 1e-9, format!("max |closed form - quadrature| = {worst:.3e} (limit 1e-9)"))
}

fn criterion_2() -> Outcome {
    let s = sigma(0.85).unwrap();
    let mut worst = 0.0f64;
    for i in 1..=19 {
        let c = 0.05 * i as f64;
        worst = worst.max((sigma(c).unwrap() - beta(c).unwrap()).abs());
    }
    Outcome::new(
        (s - 0.5567).abs() <= 5e-5 && worst <= 1e-12,
        format!("sigma(0.85) = {s:.6}; max |sigma - beta| on grid = {worst:.3e}"),
    )
}

fn criterion_3() -> Outcome {
    let e = err_bound(0.85, 20).unwrap();
    Outcome::new(e < 1e-4, format!("err_bound(0.85, 20) = {e:.4e}"))
}

fn is_connected(g: &UndirectedGraph) -> bool {
    let mut seen = vec![false; g.n()];
    let mut stack = vec![0usize];
    seen[0] = true;
    while let Some(u) = stack.pop() {
        for &v in g.neighbors(u) {
            if !std::mem::replace(&mut seen[v as usize], true) {
                stack.push(v as usize);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Random connected graph with `n <= max_n`, cycling through several shapes.
fn small_graph(i: usize, max_n: usize, rng: &mut ChaCha8Rng) -> (String, UndirectedGraph) {
    loop {
        let n = rng.gen_range(8..=max_n);
        let seed = rng.gen();
        let (label, g) = match i % 5 {
            0 => {
                let d = rng.gen_range(3.0..10.0);
                ("gnp", generate_graph(Model::Gnp { p: d / (n - 1) as f64 }, n, seed))
            }
            1 => {
                let degree = rng.gen_range(3..=5);
                let n = n + (n * degree) % 2;
                ("regular", generate_graph(Model::Regular { degree }, n, seed))
            }
            2 => ("star", generate_graph(Model::Star, n, seed)),
            3 => ("ring", generate_graph(Model::Ring, n, seed)),
            _ => {
                let mut edges: Vec<(u32, u32)> =
                    (1..n as u32).map(|v| (rng.gen_range(0..v), v)).collect();
                for _ in 0..rng.gen_range(0..n) {
                    edges.push((rng.gen_range(0..n as u32), rng.gen_range(0..n as u32)));
                }
                (
                    "tree+chords",
                    UndirectedGraph::from_edges(n, &edges, BuildOptions::default()),
                )
            }
        };
        let g = g.unwrap();
        if is_connected(&g) {
            return (format!("{label} n={}", g.n()), g);
        }
    }
}

fn criterion_4(traces: &mut Traces) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let rounds = plan_iterations(C, 1e-10).unwrap().rounds;
    let (mut cheb_worst, mut power_worst) = (0.0f64, 0.0f64);
    for i in 0..50 {
        let (label, g) = small_graph(i, 200, &mut rng);
        let exact = dense_direct_solve(&g, C).unwrap();
        let cheb = run_cpaa(&g, &SolverConfig::new(C, StopRule::Rounds(rounds))).unwrap();
        let power = run_power(&g, &PowerConfig::rounds(C, 210)).unwrap();
        cheb_worst = cheb_worst.max(max_relative_error(&cheb.ranks, &exact).unwrap().max_rel_err);
        power_worst = power_worst.max(max_relative_error(&power.ranks, &exact).unwrap().max_rel_err);
        traces.keep(label, g.n(), C, &cheb);
    }
    Outcome::new(
        cheb_worst <= 1e-8 && power_worst <= 1e-9,
        format!(
            "50 graphs, cpaa at {rounds} rounds max rel err {cheb_worst:.3e} (limit 1e-8), \
             power at 210 rounds {power_worst:.3e} (limit 1e-9)"
        ),
    )
}

fn criterion_5(traces: &mut Traces) -> Outcome {
    let eps = 1e-3;
    let graphs = [
        ("gnp", Model::Gnp { p: 6.0 / (DESK_N - 1) as f64 }),
        ("ring", Model::Ring),
        ("regular", Model::Regular { degree: 6 }),
    ];
    let mut pass = true;
    let mut parts = Vec::new();
    for (label, model) in graphs {
        let g = generate_graph(model, DESK_N, 5).unwrap();
        let cmp = compare(&g, &CompareConfig::new(C, eps)).unwrap();
        let cheb = cmp.row(Algorithm::Cpaa, 1).unwrap();
        let power = cmp.row(Algorithm::Power, 1).unwrap();
        traces.keep(format!("{label} n={DESK_N}"), g.n(), C, &cheb.result);
        let ok = cheb.reached
            && power.reached
            && cheb.rounds.abs_diff(12) <= 2
            && power.rounds.abs_diff(20) <= 2
            && cheb.rounds < power.rounds;
        pass &= ok;
        parts.push(format!(
            "{label}: cpaa {} / power {} rounds{}",
            cheb.rounds,
            power.rounds,
            if ok { "" } else { " [out of band]" }
        ));
    }

    let g = generate_graph(Model::Gnp { p: 6.0 / (LARGE_N - 1) as f64 }, LARGE_N, 5).unwrap();
    let cmp = compare(&g, &CompareConfig::new(C, eps)).unwrap();
    let cheb = cmp.row(Algorithm::Cpaa, 1).unwrap();
    let power = cmp.row(Algorithm::Power, 1).unwrap();
    traces.keep(format!("gnp n={LARGE_N}"), g.n(), C, &cheb.result);
    let faster = cheb.reached && power.reached && cheb.elapsed < power.elapsed;
    pass &= faster;
    parts.push(format!(
        "gnp n=1e6 time to eps: cpaa {:.1} ms vs power {:.1} ms",
        ms(cheb.elapsed),
        ms(power.elapsed)
    ));
    Outcome::new(pass, parts.join("; "))
}

fn criterion_6(traces: &Traces) -> Outcome {
    let mut worst_vector = 0.0f64;
    let mut worst_acc = 0.0f64;
    let mut failing = Vec::new();
    for (label, n, _, r) in &traces.runs {
        let n = *n as f64;
        for rec in &r.trace {
            let RoundDetail::Chebyshev {
                accumulated_mass,
                vector_mass,
                accumulator_mass,
                ..
            } = rec.detail
            else {
                unreachable!()
            };
            let dv = (vector_mass - n).abs() / n;
            let da = (accumulator_mass - accumulated_mass).abs() / n;
            worst_vector = worst_vector.max(dv);
            worst_acc = worst_acc.max(da);
            if (dv > 1e-12 || da > 1e-12) && failing.last() != Some(label) {
                failing.push(label.clone());
            }
        }
    }
    Outcome::new(
        failing.is_empty(),
        format!(
            "{} traces; max |sum T - n|/n = {worst_vector:.3e}, max |sum acc - S_k|/n = {worst_acc:.3e}{}",
            traces.runs.len(),
            if failing.is_empty() { String::new() } else { format!("; failing: {}", failing.join(", ")) }
        ),
    )
}

fn ranks_csv(ranks: &[f64]) -> Vec<u8> {
    let mut buf = Vec::new();
    write_ranks(&mut buf, ranks).unwrap();
    buf
}

fn criterion_7() -> Outcome {
    let g = generate_graph(Model::Gnp { p: 6.0 / (DESK_N - 1) as f64 }, DESK_N, 7).unwrap();
    let mut pass = true;
    for algo in [Algorithm::Cpaa, Algorithm::Power] {
        let outputs: Vec<Vec<u8>> = [1, 2, 8]
            .into_iter()
            .map(|k| {
                let r = match algo {
                    Algorithm::Cpaa => run_cpaa(
                        &g,
                        &SolverConfig::new(C, StopRule::TargetError(1e-10)).with_parallelism(k),
                    ),
                    Algorithm::Power => run_power(&g, &PowerConfig::rounds(C, 210).with_parallelism(k)),
                };
                ranks_csv(&r.unwrap().ranks)
            })
            .collect();
        pass &= outputs.windows(2).all(|w| w[0] == w[1]);
    }
    Outcome::new(pass, "ranks CSV for K = 1, 2, 8 compared byte for byte, cpaa and power")
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut worst = 0.0f64;
    for i in 0..100 {
        let g = if i % 4 == 3 {
            let n = rng.gen_range(2..=512);
            let mut edges = generate(Model::Gnp { p: 4.0 / (n - 1) as f64 }, n, rng.gen()).unwrap();
            for _ in 0..n / 4 {
                let u = rng.gen_range(0..n as u32);
                edges.push((u, if rng.gen() { u } else { rng.gen_range(0..n as u32) }));
            }
            let opts = BuildOptions {
                keep_multi: true,
                ..BuildOptions::default()
            };
            UndirectedGraph::from_edges(n, &edges, opts).unwrap()
        } else {
            small_graph(i, 512, &mut rng).1
        };
        worst = worst.max(symmetry_similarity_check(&g).unwrap());
    }
    Outcome::new(worst == 0.0, format!("100 graphs, max asymmetry {worst:e}"))
}

fn criterion_9(traces: &Traces) -> Outcome {
    let mut worst = 0.0f64;
    let mut checked = 0;
    for (_, _, c, r) in &traces.runs {
        let b = beta(*c).unwrap();
        let residual: Vec<f64> = r
            .trace
            .iter()
            .map(|rec| match rec.detail {
                RoundDetail::Chebyshev { residual_mass, .. } => residual_mass,
                RoundDetail::Power { .. } => unreachable!(),
            })
            .collect();
        for w in residual.windows(2) {
            worst = worst.max((w[1] / w[0] - b).abs());
            checked += 1;
        }
    }
    Outcome::new(
        checked > 0 && worst <= 1e-9,
        format!("{checked} round pairs over {} traces, max |ratio - beta| = {worst:.3e}", traces.runs.len()),
    )
}

type Check = Box<dyn FnMut(&mut Traces) -> Outcome>;

fn ms(d: Duration) -> f64 {
    d.as_secs_f64() * 1e3
}

fn main() -> ExitCode {
    let mut traces = Traces::default();
    let criteria: Vec<(&str, Duration, Check)> = vec![
        ("coefficient oracle agreement", Duration::from_secs(10), Box::new(|_| criterion_1())),
        ("sigma reproduction", Duration::from_secs(1), Box::new(|_| criterion_2())),
        ("error bound after 20 rounds", Duration::from_secs(1), Box::new(|_| criterion_3())),
        ("dense oracle equivalence", Duration::from_secs(60), Box::new(criterion_4)),
        ("iteration ratio at desk scale", Duration::from_secs(300), Box::new(criterion_5)),
        ("mass conservation", Duration::from_secs(10), Box::new(|t| criterion_6(t))),
        ("parallel determinism", Duration::from_secs(120), Box::new(|_| criterion_7())),
        ("similarity symmetry", Duration::from_secs(30), Box::new(|_| criterion_8())),
        ("residual ratio equals beta", Duration::from_secs(10), Box::new(|t| criterion_9(t))),
    ];
    let mut failed = 0;
    for (i, (name, budget, mut check)) in criteria.into_iter().enumerate() {
        let started = Instant::now();
        let outcome = check(&mut traces);
        let took = started.elapsed();
        let pass = outcome.pass && took <= budget;
        if !pass {
            failed += 1;
        }
        println!(
            "[{}] {} {name}: {} ({:.2} s, budget {} s)",
            if pass { "PASS" } else { "FAIL" },
            i + 1,
            outcome.detail,
            took.as_secs_f64(),
            budget.as_secs()
        );
    }
    println!("{} of 9 criteria passed", 9 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
