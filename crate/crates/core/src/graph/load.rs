use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::Path;
use std::str::FromStr;

use super::{BuildOptions, UndirectedGraph};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphFormat {
    EdgeList,
    MatrixMarket,
}

impl FromStr for GraphFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "edgelist" => Ok(GraphFormat::EdgeList),
            "mtx" => Ok(GraphFormat::MatrixMarket),
            other => Err(Error::UnsupportedFormat(format!(
                "graph format {other:?} (expected edgelist or mtx)"
            ))),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct LoadOptions {
    pub keep_multi: bool,
    pub drop_isolated: bool,
    /// Matrix Market `general` files only: take the union of `(i, j)` and
    /// `(j, i)` instead of requiring both.
    pub symmetrize: bool,
}

impl LoadOptions {
    fn build(&self) -> BuildOptions {
        BuildOptions {
            keep_multi: self.keep_multi,
            drop_isolated: self.drop_isolated,
        }
    }
}

#[derive(Debug)]
pub struct Loaded {
    pub graph: UndirectedGraph,
    pub warnings: Vec<String>,
}

pub fn load_graph(path: impl AsRef<Path>, format: GraphFormat, opts: LoadOptions) -> Result<Loaded> {
    match format {
        GraphFormat::EdgeList => load_edge_list(path, opts),
        GraphFormat::MatrixMarket => load_matrix_market(path, opts),
    }
}

fn open(path: &Path) -> Result<BufReader<File>> {
    File::open(path).map(BufReader::new).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn read_error(source: std::io::Error) -> Error {
    Error::Io {
        path: "<input>".into(),
        source,
    }
}

pub fn load_edge_list(path: impl AsRef<Path>, opts: LoadOptions) -> Result<Loaded> {
    let path = path.as_ref();
    parse_edge_list(open(path)?, opts).map_err(|e| attach_path(e, path))
}

pub fn load_matrix_market(path: impl AsRef<Path>, opts: LoadOptions) -> Result<Loaded> {
    let path = path.as_ref();
    parse_matrix_market(open(path)?, opts).map_err(|e| attach_path(e, path))
}

fn attach_path(err: Error, path: &Path) -> Error {
    match err {
        Error::Io { source, .. } => Error::Io {
            path: path.to_path_buf(),
            source,
        },
        other => other,
    }
}

fn parse_id(token: &str, line: usize) -> Result<u32> {
    let id: u64 = token.parse().map_err(|_| Error::Parse {
        line,
        message: format!("{token:?} is not a non-negative integer vertex id"),
    })?;
    if id >= u64::from(u32::MAX) {
        return Err(Error::Parse {
            line,
            message: format!("vertex id {id} exceeds the 32-bit range"),
        });
    }
    Ok(id as u32)
}

/// Whitespace-separated `u v` pairs, `#` comment lines. Vertex ids are taken
/// literally, so `n = max id + 1`.
pub fn parse_edge_list<R: BufRead>(reader: R, opts: LoadOptions) -> Result<Loaded> {
    let mut edges = Vec::new();
    let mut max_id: Option<u32> = None;
    for (idx, line) in reader.lines().enumerate() {
        let line = line.map_err(read_error)?;
        let lineno = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut tokens = trimmed.split_whitespace();
        let (Some(a), Some(b), None) = (tokens.next(), tokens.next(), tokens.next()) else {
            return Err(Error::Parse {
                line: lineno,
                message: format!("expected two vertex ids, found {trimmed:?}"),
            });
        };
        let (u, v) = (parse_id(a, lineno)?, parse_id(b, lineno)?);
        max_id = Some(max_id.unwrap_or(0).max(u).max(v));
        edges.push((u, v));
    }
    let n = max_id.map_or(0, |id| id as usize + 1);
    let graph = UndirectedGraph::from_edges(n, &edges, opts.build())?;
    Ok(Loaded {
        graph,
        warnings: Vec::new(),
    })
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Symmetry {
    Symmetric,
    General,
}

/// Coordinate-format Matrix Market with `pattern`, `real` or `integer`
/// values (values are discarded) and `symmetric` or `general` storage.
pub fn parse_matrix_market<R: BufRead>(reader: R, opts: LoadOptions) -> Result<Loaded> {
    let mut lines = reader.lines().enumerate();
    let mut warnings = Vec::new();

    let header = match lines.next() {
        Some((_, line)) => line.map_err(read_error)?,
        None => return Err(Error::UnsupportedFormat("empty Matrix Market file".into())),
    };
    let fields: Vec<String> = header.split_whitespace().map(str::to_ascii_lowercase).collect();
    if fields.len() != 5 || fields[0] != "%%matrixmarket" || fields[1] != "matrix" {
        return Err(Error::UnsupportedFormat(format!(
            "expected a %%MatrixMarket matrix header, found {header:?}"
        )));
    }
    if fields[2] != "coordinate" {
        return Err(Error::UnsupportedFormat(format!(
            "{} storage (only coordinate is supported)",
            fields[2]
        )));
    }
    let weighted = match fields[3].as_str() {
        "pattern" => false,
        "real" | "integer" => true,
        other => {
            return Err(Error::UnsupportedFormat(format!("{other} field")));
        }
    };
    let symmetry = match fields[4].as_str() {
        "symmetric" => Symmetry::Symmetric,
        "general" => Symmetry::General,
        other => {
            return Err(Error::UnsupportedFormat(format!("{other} symmetry")));
        }
    };
    if weighted {
        let msg = format!("{} values are ignored; edges are unweighted", fields[3]);
        log::warn!("{msg}");
        warnings.push(msg);
    }

    let mut size: Option<(usize, usize)> = None;
    let mut entries: Vec<(u32, u32)> = Vec::new();
    for (idx, line) in lines.by_ref() {
        let line = line.map_err(read_error)?;
        let lineno = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('%') {
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        match size {
            None => {
                if tokens.len() != 3 {
                    return Err(Error::Parse {
                        line: lineno,
                        message: "expected `rows cols entries` size line".into(),
                    });
                }
                let parse = |t: &str| {
                    t.parse::<usize>().map_err(|_| Error::Parse {
                        line: lineno,
                        message: format!("{t:?} is not a valid size"),
                    })
                };
                let (rows, cols, nnz) = (parse(tokens[0])?, parse(tokens[1])?, parse(tokens[2])?);
                if rows != cols {
                    return Err(Error::Validation(format!(
                        "adjacency matrix must be square, got {rows} x {cols}"
                    )));
                }
                size = Some((rows, nnz));
                entries.reserve(nnz);
            }
            Some((rows, _)) => {
                let expected = if weighted { 3 } else { 2 };
                if tokens.len() != expected {
                    return Err(Error::Parse {
                        line: lineno,
                        message: format!("expected {expected} fields, found {}", tokens.len()),
                    });
                }
                let index = |t: &str| -> Result<u32> {
                    let i = parse_id(t, lineno)?;
                    if i == 0 || i as usize > rows {
                        return Err(Error::Parse {
                            line: lineno,
                            message: format!("index {i} outside 1..={rows}"),
                        });
                    }
                    Ok(i - 1)
                };
                let (i, j) = (index(tokens[0])?, index(tokens[1])?);
                if weighted && tokens[2].parse::<f64>().is_err() {
                    return Err(Error::Parse {
                        line: lineno,
                        message: format!("{:?} is not a numeric value", tokens[2]),
                    });
                }
                entries.push((i, j));
            }
        }
    }
    let Some((n, nnz)) = size else {
        return Err(Error::Parse {
            line: 1,
            message: "missing size line".into(),
        });
    };
    if entries.len() != nnz {
        return Err(Error::Parse {
            line: 1,
            message: format!("size line declares {nnz} entries but {} were read", entries.len()),
        });
    }

    let edges = match symmetry {
        Symmetry::Symmetric => entries,
        Symmetry::General if opts.symmetrize => {
            let mut pairs: Vec<(u32, u32)> =
                entries.iter().map(|&(i, j)| (i.min(j), i.max(j))).collect();
            pairs.sort_unstable();
            pairs.dedup();
            pairs
        }
        Symmetry::General => {
            let mut sorted = entries.clone();
            sorted.sort_unstable();
            if let Some(&(i, j)) = entries
                .iter()
                .find(|&&(i, j)| i != j && sorted.binary_search(&(j, i)).is_err())
            {
                return Err(Error::Validation(format!(
                    "general matrix is not symmetric: entry ({}, {}) has no ({}, {}) counterpart",
                    i + 1,
                    j + 1,
                    j + 1,
                    i + 1
                )));
            }
            entries.into_iter().filter(|&(i, j)| i <= j).collect()
        }
    };
    let graph = UndirectedGraph::from_edges(n, &edges, opts.build())?;
    Ok(Loaded { graph, warnings })
}
