//! Error metrics against a reference vector and brute-force dense oracles.

use crate::error::{Error, Result};
use crate::graph::UndirectedGraph;
use crate::parallel::stable_sum;

pub const DENSE_SOLVE_LIMIT: usize = 512;
pub const SIMILARITY_LIMIT: usize = 2048;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ErrorReport {
    /// `max_i |est_i - ref_i| / ref_i`
    pub max_rel_err: f64,
    pub l1_err: f64,
    /// `|sum(est) - 1|`
    pub mass_gap: f64,
}

pub fn max_relative_error(est: &[f64], reference: &[f64]) -> Result<ErrorReport> {
    if est.len() != reference.len() {
        return Err(Error::LengthMismatch {
            expected: reference.len(),
            actual: est.len(),
        });
    }
    let mut max_rel_err = 0.0f64;
    let mut diffs = Vec::with_capacity(est.len());
    for (&e, &r) in est.iter().zip(reference) {
        if r.is_nan() || r <= 0.0 {
            return Err(Error::Domain {
                name: "reference entry",
                value: r,
                expected: "(0, inf)",
            });
        }
        let d = (e - r).abs();
        max_rel_err = max_rel_err.max(d / r);
        diffs.push(d);
    }
    Ok(ErrorReport {
        max_rel_err,
        l1_err: stable_sum(&diffs),
        mass_gap: (stable_sum(est) - 1.0).abs(),
    })
}

pub fn mass_check(values: &[f64], expected: f64) -> f64 {
    (stable_sum(values) - expected).abs()
}

/// Solves `(I - cP) x = (1 - c) e/n` by dense Gaussian elimination with
/// partial pivoting and returns `x / sum(x)`.
pub fn dense_direct_solve(g: &UndirectedGraph, c: f64) -> Result<Vec<f64>> {
    let n = g.n();
    if n > DENSE_SOLVE_LIMIT {
        return Err(Error::Capacity {
            n,
            limit: DENSE_SOLVE_LIMIT,
        });
    }
    if !(c > 0.0 && c < 1.0) {
        return Err(Error::Domain {
            name: "damping factor",
            value: c,
            expected: "(0, 1)",
        });
    }
    g.ensure_valid()?;

    // system[u][v] = delta_uv - c a_uv / d_v
    let mut system = vec![vec![0.0f64; n]; n];
    for (u, row) in system.iter_mut().enumerate() {
        row[u] = 1.0;
        for &v in g.neighbors(u) {
            row[v as usize] -= c / f64::from(g.degree(v as usize));
        }
    }
    let rhs = vec![(1.0 - c) / n as f64; n];
    let x = gauss_solve(system.clone(), rhs.clone())?;

    let residual = system
        .iter()
        .zip(&rhs)
        .map(|(row, b)| (row.iter().zip(&x).map(|(a, xi)| a * xi).sum::<f64>() - b).abs())
        .fold(0.0, f64::max);
    if residual > 1e-10 {
        return Err(Error::Numeric(format!("dense solve residual {residual:e} exceeds 1e-10")));
    }
    let total: f64 = x.iter().sum();
    Ok(x.iter().map(|v| v / total).collect())
}

fn gauss_solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Result<Vec<f64>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .unwrap();
        if a[pivot][col] == 0.0 {
            return Err(Error::Numeric(format!("singular system at column {col}")));
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        let (top, rest) = a.split_at_mut(col + 1);
        let pivot_row = &top[col];
        for (offset, row) in rest.iter_mut().enumerate() {
            let factor = row[col] / pivot_row[col];
            if factor == 0.0 {
                continue;
            }
            for k in col..n {
                row[k] -= factor * pivot_row[k];
            }
            b[col + 1 + offset] -= factor * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let s: f64 = (i + 1..n).map(|k| a[i][k] * x[k]).sum();
        x[i] = (b[i] - s) / a[i][i];
    }
    Ok(x)
}

/// Max entrywise asymmetry of `S = D^-1/2 A D^-1/2`. Zero means `P = A D^-1`
/// is similar to a symmetric matrix, so its eigenvalues are real.
pub fn symmetry_similarity_check(g: &UndirectedGraph) -> Result<f64> {
    let n = g.n();
    if n > SIMILARITY_LIMIT {
        return Err(Error::Capacity {
            n,
            limit: SIMILARITY_LIMIT,
        });
    }
    let mut adjacency = vec![0.0f64; n * n];
    for u in 0..n {
        for &v in g.neighbors(u) {
            adjacency[u * n + v as usize] += 1.0;
        }
    }
    let degree = |i: usize| f64::from(g.degrees()[i]);
    let scaled = |i: usize, j: usize| adjacency[i * n + j] / (degree(i) * degree(j)).sqrt();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in i + 1..n {
            worst = worst.max((scaled(i, j) - scaled(j, i)).abs());
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::BuildOptions;

    fn graph(n: usize, edges: &[(u32, u32)]) -> UndirectedGraph {
        UndirectedGraph::from_edges(n, edges, BuildOptions::default()).unwrap()
    }

    #[test]
    fn relative_error_examples() {
        let r = max_relative_error(&[0.3, 0.7], &[0.3, 0.7]).unwrap();
        assert_eq!(r.max_rel_err, 0.0);
        let r = max_relative_error(&[0.3, 0.7], &[0.25, 0.75]).unwrap();
        assert!((r.max_rel_err - 0.2).abs() < 1e-15);
        assert!((r.l1_err - 0.1).abs() < 1e-15);
        assert!(r.mass_gap < 1e-15);
        assert!(max_relative_error(&[0.5, 0.5], &[1.0, 0.0]).is_err());
        assert!(max_relative_error(&[0.5], &[0.5, 0.5]).is_err());
    }

    #[test]
    fn mass_check_examples() {
        assert_eq!(mass_check(&[1.0; 5], 5.0), 0.0);
        assert!((mass_check(&[0.25; 4], 2.0) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn dense_solve_examples() {
        assert_eq!(dense_direct_solve(&graph(2, &[(0, 1)]), 0.85).unwrap(), vec![0.5, 0.5]);

        let c: f64 = 0.85;
        let x = dense_direct_solve(&graph(3, &[(0, 1), (1, 2)]), c).unwrap();
        let end = (1.0 + c / 2.0) / (3.0 * (1.0 + c));
        assert!((x[0] - end).abs() < 1e-14 && (x[2] - end).abs() < 1e-14);
        assert!((x[0] - 0.256_756_756_757).abs() < 1e-12);
        assert!((x[1] - 0.486_486_486_486).abs() < 1e-12);

        let x = dense_direct_solve(&graph(4, &[(0, 1), (0, 2), (0, 3)]), c).unwrap();
        assert!((x[0] - (3.0 * c + 1.0) / (4.0 * (1.0 + c))).abs() < 1e-14);
        assert!((x[0] - 0.479_729_729_73).abs() < 1e-10);
        for leaf in &x[1..] {
            assert!((leaf - 0.173_423_423_423).abs() < 1e-10);
        }
    }

    #[test]
    fn dense_solve_capacity() {
        let edges: Vec<(u32, u32)> = (0..513).map(|i| (i, (i + 1) % 513)).collect();
        let g = graph(513, &edges);
        assert!(matches!(dense_direct_solve(&g, 0.85), Err(Error::Capacity { .. })));
    }

    #[test]
    fn similarity_is_exactly_symmetric() {
        assert_eq!(symmetry_similarity_check(&graph(3, &[(0, 1), (1, 2)])).unwrap(), 0.0);
        let g = graph(5, &[(0, 1), (0, 2), (0, 0), (3, 4), (2, 4)]);
        assert_eq!(symmetry_similarity_check(&g).unwrap(), 0.0);
    }

    #[test]
    fn similarity_detects_asymmetry() {
        let bad = UndirectedGraph::from_csr_unchecked(vec![0, 1, 2, 3], vec![1, 2, 1]);
        assert!(symmetry_similarity_check(&bad).unwrap() > 0.0);
    }
}
