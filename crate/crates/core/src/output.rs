//! CSV writers. Every table has a header row; rank values carry 17
//! significant digits so a written vector reads back bit-exactly.

use std::io::{self, Write};

use crate::chebyshev::CoefficientTable;
use crate::compare::Comparison;
use crate::trace::{PageRankResult, RoundDetail};

fn ms(d: std::time::Duration) -> f64 {
    d.as_secs_f64() * 1e3
}

pub fn write_ranks<W: Write>(mut out: W, ranks: &[f64]) -> io::Result<()> {
    writeln!(out, "vertex_id,rank")?;
    for (i, r) in ranks.iter().enumerate() {
        writeln!(out, "{i},{r:.16e}")?;
    }
    out.flush()
}

/// Chebyshev rows are `k,c_k,S_k,residual_mass,elapsed_ms[,err]`; Power rows
/// are `k,l1_change,mass,elapsed_ms[,err]`. The `err` column appears when
/// the run tracked a reference.
pub fn write_trace<W: Write>(mut out: W, result: &PageRankResult) -> io::Result<()> {
    let with_err = result.trace.iter().any(|r| r.err.is_some());
    let power = matches!(result.trace.first().map(|r| &r.detail), Some(RoundDetail::Power { .. }));
    let head = if power { "k,l1_change,mass,elapsed_ms" } else { "k,c_k,S_k,residual_mass,elapsed_ms" };
    writeln!(out, "{head}{}", if with_err { ",err" } else { "" })?;
    for rec in &result.trace {
        match rec.detail {
            RoundDetail::Chebyshev {
                coefficient,
                accumulated_mass,
                residual_mass,
                ..
            } => write!(
                out,
                "{},{coefficient:.16e},{accumulated_mass:.16e},{residual_mass:.16e},{:.6}",
                rec.round,
                ms(rec.elapsed)
            )?,
            RoundDetail::Power { l1_change, mass } => write!(
                out,
                "{},{l1_change:.16e},{mass:.16e},{:.6}",
                rec.round,
                ms(rec.elapsed)
            )?,
        }
        match rec.err {
            Some(e) if with_err => writeln!(out, ",{e:.6e}")?,
            _ if with_err => writeln!(out, ",")?,
            _ => writeln!(out)?,
        }
    }
    out.flush()
}

/// `k,c_k,err_bound`, plus `c_k_quadrature,deviation` when a quadrature
/// table is given.
pub fn write_coefficients<W: Write>(
    mut out: W,
    table: &CoefficientTable,
    bounds: &[f64],
    quadrature: Option<&CoefficientTable>,
) -> io::Result<()> {
    write!(out, "k,c_k,err_bound")?;
    if quadrature.is_some() {
        write!(out, ",c_k_quadrature,deviation")?;
    }
    writeln!(out)?;
    for (k, (&c, &b)) in table.coeffs.iter().zip(bounds).enumerate() {
        write!(out, "{k},{c:.16e},{b:.16e}")?;
        if let Some(q) = quadrature {
            let qk = q.coeffs[k];
            write!(out, ",{qk:.16e},{:.3e}", (qk - c).abs())?;
        }
        writeln!(out)?;
    }
    out.flush()
}

/// `algo,parallelism,rounds,reached,err,l1,elapsed_ms`
pub fn write_comparison<W: Write>(mut out: W, cmp: &Comparison) -> io::Result<()> {
    writeln!(out, "algo,parallelism,rounds,reached,err,l1,elapsed_ms")?;
    for row in &cmp.rows {
        writeln!(
            out,
            "{},{},{},{},{:.6e},{:.6e},{:.6}",
            row.algorithm.name(),
            row.parallelism,
            row.rounds,
            row.reached,
            row.report.max_rel_err,
            row.report.l1_err,
            ms(row.elapsed)
        )?;
    }
    out.flush()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chebyshev::{coefficients, err_bound};
    use crate::cpaa::{run_cpaa, SolverConfig, StopRule};
    use crate::graph::{BuildOptions, UndirectedGraph};

    #[test]
    fn ranks_round_trip_exactly() {
        let ranks = [0.1f64, 1.0 / 3.0, 0.566_666_666_666_666_7];
        let mut buf = Vec::new();
        write_ranks(&mut buf, &ranks).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("vertex_id,rank"));
        for (i, line) in lines.enumerate() {
            let (id, value) = line.split_once(',').unwrap();
            assert_eq!(id.parse::<usize>().unwrap(), i);
            assert_eq!(value.parse::<f64>().unwrap().to_bits(), ranks[i].to_bits());
        }
        assert!(text.contains("1,3.3333333333333331e-1"));
    }

    #[test]
    fn chebyshev_trace_columns() {
        let g = UndirectedGraph::from_edges(3, &[(0, 1), (1, 2)], BuildOptions::default()).unwrap();
        let r = run_cpaa(&g, &SolverConfig::new(0.85, StopRule::Rounds(4))).unwrap();
        let mut buf = Vec::new();
        write_trace(&mut buf, &r).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<_> = text.lines().collect();
        assert_eq!(lines[0], "k,c_k,S_k,residual_mass,elapsed_ms");
        assert_eq!(lines.len(), 5);
        assert!(lines[1].starts_with("1,2.11368468"));
        assert_eq!(lines[4].split(',').count(), 5);
    }

    #[test]
    fn coefficient_table_columns() {
        let t = coefficients(0.85, 2).unwrap();
        let bounds: Vec<f64> = (0..=2).map(|k| err_bound(0.85, k).unwrap()).collect();
        let mut buf = Vec::new();
        write_coefficients(&mut buf, &t, &bounds, Some(&t)).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<_> = text.lines().collect();
        assert_eq!(lines[0], "k,c_k,err_bound,c_k_quadrature,deviation");
        assert!(lines[1].starts_with("0,3.79663198"));
        assert!(lines[3].ends_with(",0.000e0"));
    }
}
