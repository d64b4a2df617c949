//! Compressed undirected adjacency and the column-stochastic transition
//! operator `P = A D^-1` shared by every solver.
//!
//! Each undirected edge `{u, v}` is stored twice (once in each endpoint's
//! list); a self-loop `{u, u}` is stored once and contributes exactly one to
//! the degree of `u`. Neighbor lists are sorted ascending. Unless the graph
//! was built with [`BuildOptions::keep_multi`], they are also duplicate-free.

mod load;

pub use load::{
    load_edge_list, load_graph, load_matrix_market, parse_edge_list, parse_matrix_market,
    GraphFormat, LoadOptions, Loaded,
};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct BuildOptions {
    /// Keep parallel edges as integer multiplicities instead of collapsing
    /// them. Not part of the 0/1 adjacency model; exploratory use only.
    pub keep_multi: bool,
    /// Remove degree-0 vertices and renumber the rest compactly (order
    /// preserving) instead of failing validation.
    pub drop_isolated: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GraphStats {
    pub n: usize,
    pub m: usize,
    /// Stored adjacency entries per vertex, `sum(deg) / n`.
    pub avg_degree: f64,
    pub min_degree: u32,
    pub max_degree: u32,
    pub self_loops: usize,
    pub duplicates_removed: usize,
    pub isolated_dropped: usize,
}

#[derive(Clone, Debug)]
pub struct UndirectedGraph {
    n: usize,
    m: usize,
    offsets: Vec<usize>,
    neighbors: Vec<u32>,
    degrees: Vec<u32>,
    self_loops: usize,
    duplicates_removed: usize,
    isolated_dropped: usize,
    multi: bool,
    validated: bool,
}

impl UndirectedGraph {
    /// Builds a graph on `n` vertices from undirected edge pairs.
    ///
    /// Edge orientation is irrelevant; `(u, v)` and `(v, u)` name the same
    /// edge and collapse under the default dedup policy.
    pub fn from_edges(n: usize, edges: &[(u32, u32)], opts: BuildOptions) -> Result<Self> {
        if n == 0 {
            return Err(Error::Validation("graph has no vertices".into()));
        }
        if n > u32::MAX as usize {
            return Err(Error::Validation(format!(
                "{n} vertices exceed the 32-bit vertex id range"
            )));
        }
        let mut pairs = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            let hi = u.max(v);
            if hi as usize >= n {
                return Err(Error::Validation(format!(
                    "edge ({u}, {v}) references a vertex outside 0..{n}"
                )));
            }
            pairs.push((u.min(v), hi));
        }
        pairs.sort_unstable();
        let mut duplicates_removed = 0;
        if !opts.keep_multi {
            let before = pairs.len();
            pairs.dedup();
            duplicates_removed = before - pairs.len();
        }

        let mut degrees = vec![0u32; n];
        for &(u, v) in &pairs {
            degrees[u as usize] += 1;
            if u != v {
                degrees[v as usize] += 1;
            }
        }

        let isolated: Vec<usize> = (0..n).filter(|&i| degrees[i] == 0).collect();
        let mut isolated_dropped = 0;
        let n = if isolated.is_empty() {
            n
        } else if opts.drop_isolated {
            let mut remap = vec![u32::MAX; n];
            let mut next = 0u32;
            for (i, slot) in remap.iter_mut().enumerate() {
                if degrees[i] > 0 {
                    *slot = next;
                    next += 1;
                }
            }
            for p in &mut pairs {
                *p = (remap[p.0 as usize], remap[p.1 as usize]);
            }
            degrees.retain(|&d| d > 0);
            isolated_dropped = isolated.len();
            log::info!("dropped {isolated_dropped} isolated vertices");
            if degrees.is_empty() {
                return Err(Error::Validation("graph has no edges".into()));
            }
            degrees.len()
        } else {
            return Err(Error::Validation(format!(
                "vertex {} is isolated (degree 0); {} isolated vertices in total",
                isolated[0],
                isolated.len()
            )));
        };

        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0usize);
        for &d in &degrees {
            offsets.push(offsets.last().unwrap() + d as usize);
        }
        let mut cursor = offsets[..n].to_vec();
        let mut neighbors = vec![0u32; offsets[n]];
        let mut self_loops = 0;
        for &(u, v) in &pairs {
            neighbors[cursor[u as usize]] = v;
            cursor[u as usize] += 1;
            if u != v {
                neighbors[cursor[v as usize]] = u;
                cursor[v as usize] += 1;
            } else {
                self_loops += 1;
            }
        }
        for u in 0..n {
            neighbors[offsets[u]..offsets[u + 1]].sort_unstable();
        }

        Ok(Self {
            n,
            m: pairs.len(),
            offsets,
            neighbors,
            degrees,
            self_loops,
            duplicates_removed,
            isolated_dropped,
            multi: opts.keep_multi,
            validated: true,
        })
    }

    /// Wraps raw CSR arrays without checking them. Degrees are derived from
    /// `offsets`; call [`validate`](Self::validate) before trusting the result.
    pub fn from_csr_unchecked(offsets: Vec<usize>, neighbors: Vec<u32>) -> Self {
        let n = offsets.len().saturating_sub(1);
        let degrees = offsets.windows(2).map(|w| w[1].saturating_sub(w[0]) as u32).collect();
        let mut self_loops = 0;
        for u in 0..n {
            let (lo, hi) = (offsets[u], offsets[u + 1]);
            if lo <= hi && hi <= neighbors.len() {
                self_loops += neighbors[lo..hi].iter().filter(|&&v| v as usize == u).count();
            }
        }
        let m = (neighbors.len() + self_loops) / 2;
        Self {
            n,
            m,
            offsets,
            neighbors,
            degrees,
            self_loops,
            duplicates_removed: 0,
            isolated_dropped: 0,
            multi: false,
            validated: false,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn offsets(&self) -> &[usize] {
        &self.offsets
    }

    pub fn neighbor_entries(&self) -> &[u32] {
        &self.neighbors
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    #[inline]
    pub fn degree(&self, u: usize) -> u32 {
        self.degrees[u]
    }

    #[inline]
    pub fn neighbors(&self, u: usize) -> &[u32] {
        &self.neighbors[self.offsets[u]..self.offsets[u + 1]]
    }

    pub fn is_multigraph(&self) -> bool {
        self.multi
    }

    /// Fails unless the graph satisfies every structural invariant. Graphs
    /// built through [`from_edges`](Self::from_edges) pass by construction.
    pub fn ensure_valid(&self) -> Result<()> {
        if self.validated {
            Ok(())
        } else {
            self.validate().map(|_| ())
        }
    }

    pub fn validate(&self) -> Result<GraphStats> {
        let n = self.n;
        if n == 0 {
            return Err(Error::Validation("graph has no vertices".into()));
        }
        if self.offsets.len() != n + 1 || self.offsets[0] != 0 {
            return Err(Error::Validation("offsets must have length n + 1 and start at 0".into()));
        }
        if *self.offsets.last().unwrap() != self.neighbors.len() {
            return Err(Error::Validation(format!(
                "offsets end at {} but {} neighbor entries are stored",
                self.offsets[n],
                self.neighbors.len()
            )));
        }
        for u in 0..n {
            let (lo, hi) = (self.offsets[u], self.offsets[u + 1]);
            if lo > hi {
                return Err(Error::Validation(format!("offsets decrease at vertex {u}")));
            }
            if self.degrees[u] as usize != hi - lo {
                return Err(Error::Validation(format!(
                    "degree of vertex {u} is {} but its list holds {}",
                    self.degrees[u],
                    hi - lo
                )));
            }
            if lo == hi {
                return Err(Error::Validation(format!("vertex {u} is isolated (degree 0)")));
            }
            let list = &self.neighbors[lo..hi];
            if let Some(&v) = list.iter().find(|&&v| v as usize >= n) {
                return Err(Error::Validation(format!(
                    "vertex {u} lists neighbor {v} outside 0..{n}"
                )));
            }
            for w in list.windows(2) {
                if w[0] > w[1] || (!self.multi && w[0] == w[1]) {
                    return Err(Error::Validation(format!(
                        "neighbor list of vertex {u} is not strictly ascending at {} -> {}",
                        w[0], w[1]
                    )));
                }
            }
        }
        // Symmetry: the multiplicity of v in N(u) equals that of u in N(v).
        for u in 0..n {
            let list = self.neighbors(u);
            let mut i = 0;
            while i < list.len() {
                let v = list[i];
                let run = list[i..].iter().take_while(|&&w| w == v).count();
                if v as usize != u && count_sorted(self.neighbors(v as usize), u as u32) != run {
                    return Err(Error::Validation(format!(
                        "adjacency is not symmetric: {v} in N({u}) but not the converse"
                    )));
                }
                i += run;
            }
        }

        let (min_degree, max_degree) = self
            .degrees
            .iter()
            .fold((u32::MAX, 0), |(lo, hi), &d| (lo.min(d), hi.max(d)));
        Ok(GraphStats {
            n,
            m: self.m,
            avg_degree: self.neighbors.len() as f64 / n as f64,
            min_degree,
            max_degree,
            self_loops: self.self_loops,
            duplicates_removed: self.duplicates_removed,
            isolated_dropped: self.isolated_dropped,
        })
    }

    /// `y = P x` with `y_u = sum_{v in N(u)} x_v / deg(v)`.
    pub fn transition_apply(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                actual: x.len(),
            });
        }
        let scaled = self.scale_by_degree(x);
        Ok((0..self.n).map(|u| self.gather(u, &scaled)).collect())
    }

    /// `x_v / deg(v)` for every vertex.
    pub fn scale_by_degree(&self, x: &[f64]) -> Vec<f64> {
        x.iter()
            .zip(&self.degrees)
            .map(|(&xv, &d)| xv / f64::from(d))
            .collect()
    }

    /// Sums `scaled` over the neighbor list of `u` in storage order.
    #[inline]
    pub(crate) fn gather(&self, u: usize, scaled: &[f64]) -> f64 {
        self.neighbors(u).iter().map(|&v| scaled[v as usize]).sum()
    }
}

fn count_sorted(list: &[u32], x: u32) -> usize {
    let lo = list.partition_point(|&v| v < x);
    let hi = list.partition_point(|&v| v <= x);
    hi - lo
}
