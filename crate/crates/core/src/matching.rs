// SPDX-License-Identifier: Apache-2.0

//! The k-core matching estimator and matching diagnostics.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{intersection_degrees, intersection_graph, k_core, Graph, Matching, Permutation, VertexSet};
use crate::model::CorrelatedPair;

/// Largest `n` accepted by [`kcore_matching_exact`].
pub const EXACT_MATCHING_MAX_N: usize = 8;

/// True iff every vertex of M has degree `>= k` in `G1 ∧_mu G2`.
pub fn is_kcore_matching(m: &Matching, g1: &Graph, g2: &Graph, k: usize) -> Result<bool> {
    let degree = intersection_degrees(g1, g2, m)?;
    Ok(m.pairs().all(|(i, _)| degree[i] >= k))
}

/// Maximum-cardinality k-core matching by exhaustive search.
///
/// Every k-core matching extends to a permutation `pi` whose intersection
/// graph has it inside its k-core, and the k-core of any `G1 ∧_pi G2` is itself
/// a k-core matching under `pi`. Scanning all `n!` permutations and keeping
/// the largest core therefore finds every maximizer. Ties go to the
/// lexicographically smallest `(M, mu)`.
pub fn kcore_matching_exact(g1: &Graph, g2: &Graph, k: usize) -> Result<Matching> {
    let n = g1.n();
    if g2.n() != n {
        return Err(Error::SizeMismatch { expected: n, found: g2.n() });
    }
    if n > EXACT_MATCHING_MAX_N {
        return Err(Error::TooLargeForEnumeration { n, max: EXACT_MATCHING_MAX_N });
    }
    if k == 0 {
        return Err(Error::param("k", "must be at least 1"));
    }

    let mut b = [[false; EXACT_MATCHING_MAX_N]; EXACT_MATCHING_MAX_N];
    for (x, y) in g2.edges() {
        b[x][y] = true;
        b[y][x] = true;
    }

    let mut best: Option<(Vec<usize>, Vec<usize>)> = None;
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        let members = small_core(g1, &b, &perm, k);
        let images: Vec<usize> = members.iter().map(|&i| perm[i]).collect();
        let better = match &best {
            None => true,
            Some((bm, bi)) => {
                members.len() > bm.len() || (members.len() == bm.len() && (&members, &images) < (bm, bi))
            }
        };
        if better {
            best = Some((members, images));
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    let (members, images) = best.expect("at least the identity was scanned");
    Matching::from_pairs(n, members.into_iter().zip(images))
}

// k-core of G1 ∧_perm G2 on a dense G2 table.
fn small_core(g1: &Graph, b: &[[bool; EXACT_MATCHING_MAX_N]; EXACT_MATCHING_MAX_N], perm: &[usize], k: usize) -> Vec<usize> {
    let n = perm.len();
    let mut adj = [[false; EXACT_MATCHING_MAX_N]; EXACT_MATCHING_MAX_N];
    let mut degree = [0usize; EXACT_MATCHING_MAX_N];
    for (i, j) in g1.edges() {
        if b[perm[i]][perm[j]] {
            adj[i][j] = true;
            adj[j][i] = true;
            degree[i] += 1;
            degree[j] += 1;
        }
    }
    let mut alive = [true; EXACT_MATCHING_MAX_N];
    loop {
        let Some(v) = (0..n).find(|&v| alive[v] && degree[v] < k) else {
            break;
        };
        alive[v] = false;
        for u in 0..n {
            if alive[u] && adj[v][u] {
                degree[u] -= 1;
            }
        }
    }
    (0..n).filter(|&v| alive[v]).collect()
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("pivot has a successor");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// The matcher's value with high probability: `M* = k_core(G1 ∧_pi* G2, k)`
/// with `pi*` restricted to it.
pub fn kcore_matching_oracle(pair: &CorrelatedPair, k: usize) -> Result<Matching> {
    let cap = intersection_graph(&pair.g1, &pair.g2, &pair.pi_star.as_matching())?;
    let core = k_core(&cap.graph, k)?;
    Ok(Matching::restrict(&pair.pi_star, &core))
}

/// `f(mu)`: the sum over wrongly matched `i ∈ M` of `deg_{G1 ∧_mu G2}(i)`.
pub fn f_statistic(m: &Matching, g1: &Graph, g2: &Graph, pi_star: &Permutation) -> Result<usize> {
    if pi_star.len() != m.n() {
        return Err(Error::SizeMismatch { expected: m.n(), found: pi_star.len() });
    }
    let degree = intersection_degrees(g1, g2, m)?;
    Ok(m.pairs()
        .filter(|&(i, t)| t != pi_star.apply(i))
        .map(|(i, _)| degree[i])
        .sum())
}

/// Adds `(i, pi*(i))` for every unmatched `i` whose true image is still free.
/// The result is `pi*`-maximal.
pub fn maximal_extension(m: &Matching, pi_star: &Permutation) -> Result<Matching> {
    let n = m.n();
    if pi_star.len() != n {
        return Err(Error::SizeMismatch { expected: n, found: pi_star.len() });
    }
    let mut taken = vec![false; n];
    for (_, t) in m.pairs() {
        taken[t] = true;
    }
    let extra: Vec<(usize, usize)> = (0..n)
        .filter(|&i| m.get(i).is_none() && !taken[pi_star.apply(i)])
        .map(|i| (i, pi_star.apply(i)))
        .collect();
    Matching::from_pairs(n, m.pairs().chain(extra))
}

/// True iff every `i` is matched or has its true image used.
pub fn is_pi_maximal(m: &Matching, pi_star: &Permutation) -> bool {
    let image = m.image_set();
    (0..m.n()).all(|i| m.get(i).is_some() || image.contains(pi_star.apply(i)))
}

/// Matched vertices whose image disagrees with `pi*`.
pub fn mismatched(m: &Matching, pi_star: &Permutation) -> VertexSet {
    m.pairs().filter(|&(i, t)| t != pi_star.apply(i)).map(|(i, _)| i).collect()
}
