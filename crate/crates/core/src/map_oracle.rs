// SPDX-License-Identifier: Apache-2.0

//! Genie-aided MAP estimation on the vertices that carry no cross-graph
//! information, and the witnesses of its failure.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{intersection_degrees, Graph, Permutation, VertexSet};
use crate::labeling::Labeling;
use crate::model::CorrelatedPair;

/// `R_pi`: vertices isolated in `G1 ∧_pi G2`.
pub fn singleton_set(pi: &Permutation, g1: &Graph, g2: &Graph) -> Result<VertexSet> {
    let degree = intersection_degrees(g1, g2, &pi.as_matching())?;
    Ok((0..g1.n()).filter(|&i| degree[i] == 0).collect())
}

/// `(S_pi, R_bar_pi)` with `R_bar = R ∪ pi^{-1}(N2(pi(R)))` and
/// `S = {i in R : no G1 neighbour of i lies in R_bar}`.
pub fn pruned_set(pi: &Permutation, g1: &Graph, g2: &Graph) -> Result<(VertexSet, VertexSet)> {
    let r = singleton_set(pi, g1, g2)?;
    Ok(prune(pi, g1, g2, &r))
}

fn prune(pi: &Permutation, g1: &Graph, g2: &Graph, r: &VertexSet) -> (VertexSet, VertexSet) {
    let n = g1.n();
    let inv = pi.inverse();
    let mut in_bar = r.to_mask(n);
    for i in r.iter() {
        for &b in g2.adj(pi.apply(i)) {
            in_bar[inv.apply(b)] = true;
        }
    }
    let s = r.iter().filter(|&i| g1.adj(i).iter().all(|&j| !in_bar[j])).collect();
    (s, VertexSet::from_mask(&in_bar))
}

/// `maj(i) = sum of sigma(j) over the G1 neighbours j of i`.
pub fn maj_values(g1: &Graph, sigma: &Labeling) -> Result<Vec<i64>> {
    if sigma.len() != g1.n() {
        return Err(Error::SizeMismatch { expected: g1.n(), found: sigma.len() });
    }
    if !sigma.is_total() {
        return Err(Error::PartialLabeling);
    }
    Ok((0..g1.n())
        .map(|i| g1.adj(i).iter().map(|&j| i64::from(sigma.raw(j))).sum())
        .collect())
}

/// Everything the MAP estimator sees, computed under the true permutation.
#[derive(Debug, Clone)]
pub struct MapContext<'a> {
    pub pair: &'a CorrelatedPair,
    pub alpha: f64,
    pub beta: f64,
    pub r_star: VertexSet,
    pub r_bar: VertexSet,
    pub s_star: VertexSet,
    /// `maj(i)` for every vertex.
    pub maj: Vec<i64>,
}

impl<'a> MapContext<'a> {
    pub fn new(pair: &'a CorrelatedPair, alpha: f64, beta: f64) -> Result<Self> {
        let r_star = singleton_set(&pair.pi_star, &pair.g1, &pair.g2)?;
        let (s_star, r_bar) = prune(&pair.pi_star, &pair.g1, &pair.g2, &r_star);
        let maj = maj_values(&pair.g1, &pair.sigma_star)?;
        Ok(Self { pair, alpha, beta, r_star, r_bar, s_star, maj })
    }

    fn ascending(&self) -> Result<bool> {
        if self.alpha == self.beta {
            return Err(Error::EqualRates);
        }
        Ok(self.alpha < self.beta)
    }
}

/// The MAP labeling: true labels off `S_*`; on `S_*`, the `|S_* ∩ V+|`
/// vertices with the largest `maj` (smallest when `alpha < beta`) get `+1`.
/// Ties go to the smaller id.
pub fn map_estimate(ctx: &MapContext<'_>) -> Result<Labeling> {
    let ascending = ctx.ascending()?;
    let sigma = &ctx.pair.sigma_star;
    let mut labels = sigma.clone();
    let plus = ctx.s_star.iter().filter(|&i| sigma.raw(i) == 1).count();
    let mut ranked: Vec<usize> = ctx.s_star.iter().collect();
    ranked.sort_by(|&a, &b| {
        let key = if ascending {
            ctx.maj[a].cmp(&ctx.maj[b])
        } else {
            ctx.maj[b].cmp(&ctx.maj[a])
        };
        key.then(a.cmp(&b))
    });
    for (rank, &i) in ranked.iter().enumerate() {
        labels.set(i, if rank < plus { 1 } else { -1 });
    }
    Ok(labels)
}

/// Lexicographically smallest `(i, j)` with `i ∈ S_* ∩ V+`, `j ∈ S_* ∩ V-`
/// and `maj(i) < maj(j)` (reversed when `alpha < beta`). `None` when there is
/// no such pair or the rates are equal.
pub fn map_failure_witness(ctx: &MapContext<'_>) -> Option<(usize, usize)> {
    let ascending = ctx.ascending().ok()?;
    let sigma = &ctx.pair.sigma_star;
    let minus: Vec<usize> = ctx.s_star.iter().filter(|&j| sigma.raw(j) == -1).collect();
    let beats = |i: usize, j: usize| {
        if ascending {
            ctx.maj[i] > ctx.maj[j]
        } else {
            ctx.maj[i] < ctx.maj[j]
        }
    };
    ctx.s_star
        .iter()
        .filter(|&i| sigma.raw(i) == 1)
        .find_map(|i| minus.iter().find(|&&j| beats(i, j)).map(|&j| (i, j)))
}

/// `(W+, W-)`: vertices of `S_* ∩ V+` with `maj < 0` and of `S_* ∩ V-` with
/// `maj > 0`.
pub fn witness_counts(ctx: &MapContext<'_>) -> (usize, usize) {
    let sigma = &ctx.pair.sigma_star;
    let mut counts = (0, 0);
    for i in ctx.s_star.iter() {
        match sigma.raw(i) {
            1 if ctx.maj[i] < 0 => counts.0 += 1,
            -1 if ctx.maj[i] > 0 => counts.1 += 1,
            _ => {}
        }
    }
    counts
}

/// Per-vertex check that `S_*` vertices see nothing of `R_bar` in G1.
pub fn pruning_holds(ctx: &MapContext<'_>) -> bool {
    let bar = ctx.r_bar.to_mask(ctx.pair.n());
    ctx.s_star.iter().all(|i| ctx.pair.g1.adj(i).iter().all(|&j| !bar[j]))
}
