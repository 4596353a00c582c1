// SPDX-License-Identifier: Apache-2.0

//! Text formats for graphs, permutations, labelings, matchings and instance
//! directories.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use csbm_core::{CorrelatedPair, Graph, Labeling, Matching, ModelParams, Permutation, VertexSet};
use serde::{Deserialize, Serialize};

use crate::error::{format_err, LabError, Result};

pub const G1_FILE: &str = "g1.edges";
pub const G2_FILE: &str = "g2.edges";
pub const PI_FILE: &str = "pi_star.txt";
pub const SIGMA_FILE: &str = "sigma_star.txt";
pub const META_FILE: &str = "meta.toml";

/// Lines that carry data: trimmed, non-empty, with their 1-based numbers.
fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty())
}

fn parse_id(what: &str, line: usize, token: &str) -> Result<usize> {
    token
        .parse()
        .map_err(|_| format_err(what, line, format!("not a vertex id: {token:?}")))
}

fn two_ids(what: &str, line: usize, text: &str) -> Result<(usize, usize)> {
    let mut tokens = text.split_whitespace();
    match (tokens.next(), tokens.next(), tokens.next()) {
        (Some(a), Some(b), None) => Ok((parse_id(what, line, a)?, parse_id(what, line, b)?)),
        _ => Err(format_err(what, line, "expected two ids")),
    }
}

/// `n=<n>` followed by one `i j` line per edge, `i < j`, in sorted order.
pub fn format_edge_list(g: &Graph) -> String {
    let mut out = format!("n={}\n", g.n());
    for (i, j) in g.edges() {
        writeln!(out, "{i} {j}").unwrap();
    }
    out
}

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    const WHAT: &str = "edge list";
    let mut lines = data_lines(text);
    let (line, header) = lines.next().ok_or_else(|| format_err(WHAT, 1, "missing n= header"))?;
    let n = header
        .strip_prefix("n=")
        .and_then(|v| v.trim().parse::<usize>().ok())
        .ok_or_else(|| format_err(WHAT, line, "expected n=<int>"))?;
    let mut edges = Vec::new();
    for (line, text) in lines {
        let (i, j) = two_ids(WHAT, line, text)?;
        if i >= j {
            let reason = if i == j { "self-loop" } else { "expected i < j" };
            return Err(format_err(WHAT, line, reason));
        }
        if j >= n {
            return Err(format_err(WHAT, line, format!("vertex {j} out of range for n={n}")));
        }
        edges.push((i, j));
    }
    Ok(Graph::from_edges(n, edges)?)
}

/// Line `i` holds `pi(i)`.
pub fn format_permutation(pi: &Permutation) -> String {
    pi.as_slice().iter().map(|v| format!("{v}\n")).collect()
}

pub fn parse_permutation(text: &str) -> Result<Permutation> {
    let map = data_lines(text)
        .map(|(line, t)| parse_id("permutation", line, t))
        .collect::<Result<Vec<_>>>()?;
    Ok(Permutation::from_vec(map)?)
}

/// Line `i` holds `+1` or `-1`. The labeling must be total.
pub fn format_labeling(sigma: &Labeling) -> String {
    sigma
        .as_slice()
        .iter()
        .map(|&x| if x == 1 { "+1\n" } else { "-1\n" })
        .collect()
}

pub fn parse_labeling(text: &str) -> Result<Labeling> {
    let values = data_lines(text)
        .map(|(line, t)| match t {
            "+1" | "1" => Ok(1),
            "-1" => Ok(-1),
            _ => Err(format_err("labeling", line, format!("expected +1 or -1, got {t:?}"))),
        })
        .collect::<Result<Vec<i8>>>()?;
    Ok(Labeling::from_signs(values)?)
}

/// Lines `i mu(i)` for matched `i`, sorted by `i`.
pub fn format_matching(m: &Matching) -> String {
    m.pairs().map(|(i, t)| format!("{i} {t}\n")).collect()
}

pub fn parse_matching(text: &str, n: usize) -> Result<Matching> {
    let mut pairs = Vec::new();
    let mut last = None;
    for (line, t) in data_lines(text) {
        let (i, t) = two_ids("matching", line, t)?;
        if last.is_some_and(|l| i <= l) {
            return Err(format_err("matching", line, "ids must be strictly increasing"));
        }
        last = Some(i);
        pairs.push((i, t));
    }
    Ok(Matching::from_pairs(n, pairs)?)
}

/// One id per line, ascending.
pub fn format_vertex_set(set: &VertexSet) -> String {
    set.iter().map(|v| format!("{v}\n")).collect()
}

pub fn parse_vertex_set(text: &str) -> Result<VertexSet> {
    let ids = data_lines(text)
        .map(|(line, t)| parse_id("vertex set", line, t))
        .collect::<Result<Vec<_>>>()?;
    Ok(VertexSet::from_unsorted(ids))
}

/// Generator used to build an instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Generator {
    Subsampling,
    Partition,
}

impl Generator {
    pub fn sample(self, params: &ModelParams, seed: u64) -> csbm_core::Result<CorrelatedPair> {
        match self {
            Generator::Subsampling => csbm_core::model::generate_subsampling(params, seed),
            Generator::Partition => csbm_core::model::generate_partition(params, seed),
        }
    }
}

/// The `meta.toml` record of an instance directory.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Meta {
    pub n: usize,
    pub alpha: f64,
    pub beta: f64,
    pub s: f64,
    pub seed: u64,
    pub generator: Generator,
}

impl Meta {
    pub fn params(&self) -> Result<ModelParams> {
        Ok(ModelParams::new(self.n, self.alpha, self.beta, self.s)?)
    }
}

pub fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| LabError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|source| LabError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Writes the five instance files into `dir`, creating it if needed.
pub fn write_instance(dir: &Path, pair: &CorrelatedPair, meta: &Meta) -> Result<()> {
    fs::create_dir_all(dir).map_err(|source| LabError::Io {
        path: dir.to_path_buf(),
        source,
    })?;
    write_text(&dir.join(G1_FILE), &format_edge_list(&pair.g1))?;
    write_text(&dir.join(G2_FILE), &format_edge_list(&pair.g2))?;
    write_text(&dir.join(PI_FILE), &format_permutation(&pair.pi_star))?;
    write_text(&dir.join(SIGMA_FILE), &format_labeling(&pair.sigma_star))?;
    let meta_text = toml::to_string(meta).map_err(|e| LabError::Config(e.to_string()))?;
    write_text(&dir.join(META_FILE), &meta_text)
}

/// Reads an instance directory. The edge-class partition is not stored.
pub fn read_instance(dir: &Path) -> Result<(CorrelatedPair, Meta)> {
    let meta: Meta = toml::from_str(&read_text(&dir.join(META_FILE))?)
        .map_err(|e| LabError::Config(format!("{}: {e}", META_FILE)))?;
    let pair = CorrelatedPair {
        g1: parse_edge_list(&read_text(&dir.join(G1_FILE))?)?,
        g2: parse_edge_list(&read_text(&dir.join(G2_FILE))?)?,
        pi_star: parse_permutation(&read_text(&dir.join(PI_FILE))?)?,
        sigma_star: parse_labeling(&read_text(&dir.join(SIGMA_FILE))?)?,
        partition: None,
    };
    pair.validate()?;
    if pair.n() != meta.n {
        return Err(csbm_core::Error::SizeMismatch {
            expected: meta.n,
            found: pair.n(),
        }
        .into());
    }
    Ok((pair, meta))
}
