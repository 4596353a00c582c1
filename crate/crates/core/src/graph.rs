// SPDX-License-Identifier: Apache-2.0

//! Undirected simple graphs, vertex sets, matchings and permutations.
//!
//! Adjacency is stored in compressed form: one offsets array and one flat
//! array of neighbor ids, each vertex's slice sorted ascending. Edge lookup is
//! a binary search in the smaller endpoint's slice.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Sorted, duplicate-free set of vertex ids.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new() -> Self {
        Self(Vec::new())
    }

    /// Builds a set from ids in any order; duplicates collapse.
    pub fn from_unsorted(mut ids: Vec<usize>) -> Self {
        ids.sort_unstable();
        ids.dedup();
        Self(ids)
    }

    /// All of `0..n`.
    pub fn full(n: usize) -> Self {
        Self((0..n).collect())
    }

    pub fn from_mask(mask: &[bool]) -> Self {
        Self(
            mask.iter()
                .enumerate()
                .filter_map(|(v, &inside)| inside.then_some(v))
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }

    pub fn to_mask(&self, n: usize) -> Vec<bool> {
        let mut mask = vec![false; n];
        for v in self.iter() {
            mask[v] = true;
        }
        mask
    }

    /// `0..n` minus this set.
    pub fn complement(&self, n: usize) -> Self {
        let mask = self.to_mask(n);
        Self((0..n).filter(|&v| !mask[v]).collect())
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.iter().all(|v| other.contains(v))
    }

    pub fn difference(&self, other: &VertexSet) -> Self {
        Self(self.iter().filter(|&v| !other.contains(v)).collect())
    }

    /// Fails if any id is `>= n`.
    pub fn check_bound(&self, n: usize) -> Result<()> {
        match self.0.last() {
            Some(&v) if v >= n => Err(Error::VertexOutOfRange { vertex: v, n }),
            _ => Ok(()),
        }
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        Self::from_unsorted(iter.into_iter().collect())
    }
}

/// Undirected simple graph on `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<usize>,
}

impl Graph {
    /// `n` isolated vertices.
    pub fn empty(n: usize) -> Self {
        Self {
            offsets: vec![0; n + 1],
            targets: Vec::new(),
        }
    }

    /// Builds a graph from an edge list. Rejects self-loops, duplicate edges
    /// (in either orientation) and ids `>= n`.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut list = Vec::new();
        for (a, b) in edges {
            for v in [a, b] {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
            }
            if a == b {
                return Err(Error::SelfLoop(a));
            }
            list.push((a.min(b), a.max(b)));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge(w[0].0, w[0].1));
        }
        Ok(Self::from_sorted_unique(n, &list))
    }

    /// `edges` must be sorted, unique, with `i < j < n` in every pair.
    pub(crate) fn from_sorted_unique(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut degree = vec![0usize; n];
        for &(i, j) in edges {
            degree[i] += 1;
            degree[j] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut cursor: Vec<usize> = offsets[..n].to_vec();
        let mut targets = vec![0usize; 2 * edges.len()];
        // Visiting (i, j) in sorted order fills every slice ascending: the
        // smaller neighbors of j arrive in increasing i before any larger one.
        for &(i, j) in edges {
            targets[cursor[j]] = i;
            cursor[j] += 1;
        }
        for &(i, j) in edges {
            targets[cursor[i]] = j;
            cursor[i] += 1;
        }
        Self { offsets, targets }
    }

    pub fn n(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn edge_count(&self) -> usize {
        self.targets.len() / 2
    }

    /// Sorted neighbor slice. Panics if `v >= n`.
    #[inline]
    pub fn adj(&self, v: usize) -> &[usize] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    #[inline]
    pub fn deg(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn degree(&self, v: usize) -> Result<usize> {
        self.check_vertex(v)?;
        Ok(self.deg(v))
    }

    pub fn neighbors(&self, v: usize) -> Result<VertexSet> {
        self.check_vertex(v)?;
        Ok(VertexSet(self.adj(v).to_vec()))
    }

    #[inline]
    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        let (small, large) = if self.deg(a) <= self.deg(b) { (a, b) } else { (b, a) };
        self.adj(small).binary_search(&large).is_ok()
    }

    /// Edges as `(i, j)` with `i < j`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n()).flat_map(move |i| {
            self.adj(i)
                .iter()
                .copied()
                .filter(move |&j| j > i)
                .map(move |j| (i, j))
        })
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n() })
        }
    }

    pub fn min_degree(&self) -> Option<usize> {
        (0..self.n()).map(|v| self.deg(v)).min()
    }
}

/// Largest vertex set whose induced subgraph has minimum degree `>= k`.
///
/// Peels under-degree vertices through a FIFO queue. The result does not
/// depend on the peeling order.
pub fn k_core(g: &Graph, k: usize) -> Result<VertexSet> {
    if k == 0 {
        return Err(Error::param("k", "must be at least 1"));
    }
    let n = g.n();
    let mut degree: Vec<usize> = (0..n).map(|v| g.deg(v)).collect();
    let mut removed = vec![false; n];
    let mut queue: VecDeque<usize> = (0..n).filter(|&v| degree[v] < k).collect();
    for &v in &queue {
        removed[v] = true;
    }
    while let Some(v) = queue.pop_front() {
        for &u in g.adj(v) {
            if removed[u] {
                continue;
            }
            degree[u] -= 1;
            if degree[u] < k {
                removed[u] = true;
                queue.push_back(u);
            }
        }
    }
    Ok(VertexSet((0..n).filter(|&v| !removed[v]).collect()))
}

/// Subgraph induced by `s`, relabeled to `0..|s|` in increasing order of the
/// original ids. The second value maps new ids back to original ones.
pub fn induced_subgraph(g: &Graph, s: &VertexSet) -> Result<(Graph, Vec<usize>)> {
    s.check_bound(g.n())?;
    let n = g.n();
    let mut new_id = vec![usize::MAX; n];
    for (idx, v) in s.iter().enumerate() {
        new_id[v] = idx;
    }
    let mut edges = Vec::new();
    for (idx, v) in s.iter().enumerate() {
        for &u in g.adj(v) {
            let w = new_id[u];
            if w != usize::MAX && w > idx {
                edges.push((idx, w));
            }
        }
    }
    edges.sort_unstable();
    Ok((Graph::from_sorted_unique(s.len(), &edges), s.as_slice().to_vec()))
}

/// Partial injective correspondence `mu: M -> 0..n` between the vertex sets
/// of two graphs on `n` vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matching {
    image: Vec<Option<usize>>,
}

impl Matching {
    pub fn empty(n: usize) -> Self {
        Self { image: vec![None; n] }
    }

    /// Builds a matching from `(i, mu(i))` pairs. Rejects out-of-range ids,
    /// repeated members and repeated images.
    pub fn from_pairs<I>(n: usize, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut image = vec![None; n];
        let mut used = vec![false; n];
        for (i, target) in pairs {
            for v in [i, target] {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
            }
            if image[i].is_some() {
                return Err(Error::param("matching", "vertex listed twice"));
            }
            if used[target] {
                return Err(Error::NotInjective(target));
            }
            used[target] = true;
            image[i] = Some(target);
        }
        Ok(Self { image })
    }

    /// Restriction of a permutation to `members`.
    pub fn restrict(pi: &Permutation, members: &VertexSet) -> Self {
        let mut image = vec![None; pi.len()];
        for i in members.iter() {
            image[i] = Some(pi.apply(i));
        }
        Self { image }
    }

    /// Size of the underlying vertex range.
    pub fn n(&self) -> usize {
        self.image.len()
    }

    /// `|M|`.
    pub fn len(&self) -> usize {
        self.image.iter().filter(|x| x.is_some()).count()
    }

    pub fn is_empty(&self) -> bool {
        self.image.iter().all(Option::is_none)
    }

    #[inline]
    pub fn get(&self, i: usize) -> Option<usize> {
        self.image.get(i).copied().flatten()
    }

    pub fn members(&self) -> VertexSet {
        VertexSet(
            self.image
                .iter()
                .enumerate()
                .filter_map(|(i, x)| x.map(|_| i))
                .collect(),
        )
    }

    /// `(i, mu(i))` sorted by `i`.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.image
            .iter()
            .enumerate()
            .filter_map(|(i, x)| x.map(|t| (i, t)))
    }

    /// `mu^{-1}` as a lookup table over `0..n`.
    pub fn inverse(&self) -> Vec<Option<usize>> {
        let mut inv = vec![None; self.n()];
        for (i, t) in self.pairs() {
            inv[t] = Some(i);
        }
        inv
    }

    /// The image set `mu(M)`.
    pub fn image_set(&self) -> VertexSet {
        VertexSet::from_unsorted(self.pairs().map(|(_, t)| t).collect())
    }

    fn check_against(&self, g1: &Graph, g2: &Graph) -> Result<()> {
        for g in [g1, g2] {
            if g.n() != self.n() {
                return Err(Error::SizeMismatch { expected: self.n(), found: g.n() });
            }
        }
        Ok(())
    }
}

/// Bijection of `0..n`; `apply(i)` is the image of `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self((0..n).collect())
    }

    pub fn from_vec(map: Vec<usize>) -> Result<Self> {
        let n = map.len();
        let mut seen = vec![false; n];
        for &t in &map {
            if t >= n || seen[t] {
                return Err(Error::NotAPermutation(n));
            }
            seen[t] = true;
        }
        Ok(Self(map))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (i, &t) in self.0.iter().enumerate() {
            inv[t] = i;
        }
        Self(inv)
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    /// The matching `([n], pi)`.
    pub fn as_matching(&self) -> Matching {
        Matching {
            image: self.0.iter().map(|&t| Some(t)).collect(),
        }
    }
}

/// Output of the matching-relative combinators.
///
/// `graph` keeps the full `0..n` range in G1 labels; vertices outside `live`
/// (the matched set M) are isolated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchedGraph {
    pub graph: Graph,
    pub live: VertexSet,
}

fn combine(
    g1: &Graph,
    g2: &Graph,
    m: &Matching,
    keep: impl Fn(bool, bool) -> bool,
) -> Result<MatchedGraph> {
    m.check_against(g1, g2)?;
    let n = m.n();
    let inverse = m.inverse();
    let mut edges = Vec::new();
    for (i, mi) in m.pairs() {
        for &j in g1.adj(i) {
            if j <= i {
                continue;
            }
            if let Some(mj) = m.get(j) {
                if keep(true, g2.has_edge(mi, mj)) {
                    edges.push((i, j));
                }
            }
        }
        // Pairs present only in G2.
        for &b in g2.adj(mi) {
            if let Some(j) = inverse[b] {
                if j > i && !g1.has_edge(i, j) && keep(false, true) {
                    edges.push((i, j));
                }
            }
        }
    }
    edges.sort_unstable();
    Ok(MatchedGraph {
        graph: Graph::from_sorted_unique(n, &edges),
        live: m.members(),
    })
}

/// `G1 ∧_mu G2`: edges `{i, j}` of M with `A_ij = 1` and `B_{mu(i) mu(j)} = 1`.
pub fn intersection_graph(g1: &Graph, g2: &Graph, m: &Matching) -> Result<MatchedGraph> {
    combine(g1, g2, m, |a, b| a && b)
}

/// `G1 ∨_mu G2`: edges with `A_ij + B_{mu(i) mu(j)} >= 1`.
pub fn union_graph(g1: &Graph, g2: &Graph, m: &Matching) -> Result<MatchedGraph> {
    combine(g1, g2, m, |a, b| a || b)
}

/// `G1 \_mu G2`: edges with `A_ij = 1` and `B_{mu(i) mu(j)} = 0`.
pub fn difference_graph(g1: &Graph, g2: &Graph, m: &Matching) -> Result<MatchedGraph> {
    combine(g1, g2, m, |a, b| a && !b)
}

/// Degree of every vertex in `G1 ∧_mu G2` without materializing it.
pub fn intersection_degrees(g1: &Graph, g2: &Graph, m: &Matching) -> Result<Vec<usize>> {
    m.check_against(g1, g2)?;
    let mut degree = vec![0usize; m.n()];
    for (i, mi) in m.pairs() {
        degree[i] = g1
            .adj(i)
            .iter()
            .filter(|&&j| m.get(j).is_some_and(|mj| g2.has_edge(mi, mj)))
            .count();
    }
    Ok(degree)
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    pub fn graph(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::from_edges(n, edges.iter().copied()).unwrap()
    }

    pub fn triangle() -> Graph {
        graph(3, &[(0, 1), (1, 2), (0, 2)])
    }

    pub fn identity_on(n: usize, members: &[usize]) -> Matching {
        Matching::from_pairs(n, members.iter().map(|&i| (i, i))).unwrap()
    }
}
