//! Seeded synthetic graphs: ring, star, random regular and G(n, p).
//!
//! Output is a sorted, duplicate-free list of `(u, v)` pairs with `u < v`,
//! identical for identical parameters and seed.

use std::collections::HashMap;
use std::io::{self, Write};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{BuildOptions, UndirectedGraph};

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Model {
    Ring,
    /// Vertex 0 joined to every other vertex.
    Star,
    /// Random simple `degree`-regular graph.
    Regular { degree: usize },
    /// Erdős–Rényi `G(n, p)`; isolated vertices are joined to a random
    /// other vertex so the result passes validation.
    Gnp { p: f64 },
}

impl Model {
    pub fn name(&self) -> &'static str {
        match self {
            Model::Ring => "ring",
            Model::Star => "star",
            Model::Regular { .. } => "regular",
            Model::Gnp { .. } => "gnp",
        }
    }
}

pub fn generate(model: Model, n: usize, seed: u64) -> Result<Vec<(u32, u32)>> {
    if n < 2 {
        return Err(Error::Config(format!("need at least 2 vertices, got {n}")));
    }
    if n > u32::MAX as usize {
        return Err(Error::Config(format!("{n} vertices exceed the 32-bit id range")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = match model {
        Model::Ring => (0..n as u32).map(|i| (i, (i + 1) % n as u32)).collect(),
        Model::Star => (1..n as u32).map(|i| (0, i)).collect(),
        Model::Regular { degree } => random_regular(n, degree, &mut rng)?,
        Model::Gnp { p } => gnp(n, p, &mut rng)?,
    };
    for e in &mut edges {
        *e = (e.0.min(e.1), e.0.max(e.1));
    }
    edges.sort_unstable();
    edges.dedup();
    Ok(edges)
}

/// Generates and builds in one step.
pub fn generate_graph(model: Model, n: usize, seed: u64) -> Result<UndirectedGraph> {
    let edges = generate(model, n, seed)?;
    UndirectedGraph::from_edges(n, &edges, BuildOptions::default())
}

pub fn write_edge_list<W: Write>(mut out: W, edges: &[(u32, u32)]) -> io::Result<()> {
    for (u, v) in edges {
        writeln!(out, "{u} {v}")?;
    }
    out.flush()
}

/// Batagelj–Brandes geometric skipping over the lower triangle, `O(n + m)`.
fn gnp(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Result<Vec<(u32, u32)>> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Config(format!("edge probability must lie in [0, 1], got {p}")));
    }
    let mut edges = Vec::new();
    if p > 0.0 {
        let log_q = (1.0 - p).ln();
        let mut v: usize = 1;
        let mut w: i64 = -1;
        while v < n {
            let r: f64 = rng.gen();
            let skip = if p >= 1.0 { 0.0 } else { ((1.0 - r).ln() / log_q).floor() };
            w += 1 + skip as i64;
            while w >= v as i64 && v < n {
                w -= v as i64;
                v += 1;
            }
            if v < n {
                edges.push((w as u32, v as u32));
            }
        }
    }

    let mut degree = vec![0u32; n];
    for &(a, b) in &edges {
        degree[a as usize] += 1;
        degree[b as usize] += 1;
    }
    for i in 0..n {
        if degree[i] == 0 {
            let mut t = rng.gen_range(0..n - 1);
            if t >= i {
                t += 1;
            }
            edges.push((i as u32, t as u32));
            degree[i] += 1;
            degree[t] += 1;
        }
    }
    Ok(edges)
}

/// Pairing model followed by random edge switches that remove every loop
/// and parallel edge.
fn random_regular(n: usize, degree: usize, rng: &mut ChaCha8Rng) -> Result<Vec<(u32, u32)>> {
    if degree == 0 || degree >= n {
        return Err(Error::Config(format!(
            "regular degree must lie in 1..{n}, got {degree}"
        )));
    }
    if !(n * degree).is_multiple_of(2) {
        return Err(Error::Config(format!(
            "n * degree must be even for a regular graph (n = {n}, degree = {degree})"
        )));
    }
    let mut stubs: Vec<u32> = (0..n as u32)
        .flat_map(|v| std::iter::repeat_n(v, degree))
        .collect();
    for i in (1..stubs.len()).rev() {
        let j = rng.gen_range(0..=i);
        stubs.swap(i, j);
    }
    let key = |a: u32, b: u32| (a.min(b), a.max(b));
    let mut edges: Vec<(u32, u32)> = stubs.chunks(2).map(|s| key(s[0], s[1])).collect();
    let mut count: HashMap<(u32, u32), u32> = HashMap::with_capacity(edges.len());
    for &e in &edges {
        *count.entry(e).or_insert(0) += 1;
    }
    let is_bad = |e: (u32, u32), count: &HashMap<(u32, u32), u32>| e.0 == e.1 || count[&e] > 1;

    let budget = 1000 * edges.len() + 10_000;
    let mut attempts = 0;
    loop {
        let bad: Vec<usize> = (0..edges.len()).filter(|&i| is_bad(edges[i], &count)).collect();
        if bad.is_empty() {
            return Ok(edges);
        }
        for i in bad {
            if !is_bad(edges[i], &count) {
                continue;
            }
            loop {
                attempts += 1;
                if attempts > budget {
                    return Err(Error::Numeric(format!(
                        "could not repair a {degree}-regular pairing on {n} vertices"
                    )));
                }
                let j = rng.gen_range(0..edges.len());
                let (a, b) = edges[i];
                let (mut x, mut y) = edges[j];
                if j == i || is_bad((x, y), &count) {
                    continue;
                }
                if rng.gen::<bool>() {
                    std::mem::swap(&mut x, &mut y);
                }
                let (e1, e2) = (key(a, x), key(b, y));
                if a == x || b == y || e1 == e2 || count.contains_key(&e1) || count.contains_key(&e2) {
                    continue;
                }
                for old in [edges[i], edges[j]] {
                    let c = count.get_mut(&old).unwrap();
                    *c -= 1;
                    if *c == 0 {
                        count.remove(&old);
                    }
                }
                count.insert(e1, 1);
                count.insert(e2, 1);
                edges[i] = e1;
                edges[j] = e2;
                break;
            }
        }
    }
}
