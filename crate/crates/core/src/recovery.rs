// SPDX-License-Identifier: Apache-2.0

//! Community recovery: almost-exact labeling of one graph, refinement on a
//! k-core matching, and the full two-graph pipeline.

use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{difference_graph, intersection_graph, k_core, union_graph, Graph, Matching, Permutation, VertexSet};
use crate::labeling::Labeling;
use crate::luczak::luczak_expand;
use crate::matching::{is_kcore_matching, kcore_matching_exact};
use crate::rng::{stream, Purpose};
use crate::spectral::leading_eigenpair;
use crate::thresholds::chernoff_hellinger;
use crate::DEFAULT_K;

/// Parameters shared by the recovery stages.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RecoveryConfig {
    pub alpha: f64,
    pub beta: f64,
    pub s: f64,
    pub eps: f64,
    pub k: usize,
}

impl RecoveryConfig {
    /// Validates the fields. Equal rates are accepted; every vote then
    /// follows the majority rule.
    pub fn new(alpha: f64, beta: f64, s: f64, eps: f64, k: usize) -> Result<Self> {
        check_rates(alpha, beta)?;
        if !(0.0..=1.0).contains(&s) {
            return Err(Error::param("s", "must lie in [0, 1]"));
        }
        check_eps(eps)?;
        if k == 0 {
            return Err(Error::param("k", "must be at least 1"));
        }
        Ok(Self { alpha, beta, s, eps, k })
    }

    /// Config with `eps` from [`eps_feasible`], or [`fallback_eps`] when no
    /// feasible value exists. The flag is true when the fallback was used.
    pub fn with_default_eps(alpha: f64, beta: f64, s: f64) -> Result<(Self, bool)> {
        match eps_feasible(alpha, beta, s) {
            Some(eps) => Ok((Self::new(alpha, beta, s, eps, DEFAULT_K)?, false)),
            None => Ok((Self::new(alpha, beta, s, fallback_eps(alpha, beta, s), DEFAULT_K)?, true)),
        }
    }

    /// Split count used when labeling G1 with rates `(s alpha, s beta)`.
    pub fn m(&self) -> Result<u64> {
        choose_m(self.eps, self.s * self.alpha, self.s * self.beta)
    }

    fn direction(&self) -> i8 {
        direction(self.alpha, self.beta)
    }
}

fn check_rates(alpha: f64, beta: f64) -> Result<()> {
    if !(alpha >= 0.0 && alpha.is_finite()) {
        return Err(Error::param("alpha", "must be finite and nonnegative"));
    }
    if !(beta >= 0.0 && beta.is_finite()) {
        return Err(Error::param("beta", "must be finite and nonnegative"));
    }
    Ok(())
}

fn check_eps(eps: f64) -> Result<()> {
    if eps > 0.0 && eps.is_finite() {
        Ok(())
    } else {
        Err(Error::param("eps", "must be positive and finite"))
    }
}

// +1 votes with the majority, -1 with the minority.
fn direction(alpha: f64, beta: f64) -> i8 {
    if alpha >= beta {
        1
    } else {
        -1
    }
}

// Label from a signed neighbour sum; ties go to +1.
#[inline]
fn vote(score: i64, direction: i8) -> i8 {
    if score * i64::from(direction) >= 0 {
        1
    } else {
        -1
    }
}

/// Smallest `m` with `(ln(eps m / (200 max{1, alpha, beta})) - 1) eps / 2 > 1`.
///
/// Saturates at `u64::MAX` when the answer does not fit.
pub fn choose_m(eps: f64, alpha: f64, beta: f64) -> Result<u64> {
    check_eps(eps)?;
    check_rates(alpha, beta)?;
    let c = 200.0 * alpha.max(beta).max(1.0);
    let holds = |m: f64| (libm::log(eps * m / c) - 1.0) * eps / 2.0 > 1.0;
    let bound = c / eps * libm::exp(1.0 + 2.0 / eps);
    // 2^64 is the first value past u64::MAX.
    if !(bound < 18_446_744_073_709_551_615.0) {
        return Ok(u64::MAX);
    }
    let mut m = (libm::floor(bound) as u64).max(1);
    while m > 1 && holds((m - 1) as f64) {
        m -= 1;
    }
    while !holds(m as f64) {
        if m == u64::MAX {
            return Ok(m);
        }
        m += 1;
    }
    Ok(m)
}

/// Default `eps` satisfying both clauses of the feasibility condition, or
/// `None` when no positive value exists or the rates are equal.
pub fn eps_feasible(alpha: f64, beta: f64, s: f64) -> Option<f64> {
    if alpha == beta || !(0.0..=1.0).contains(&s) {
        return None;
    }
    let d = chernoff_hellinger(alpha, beta).ok()?;
    let l = libm::fabs(libm::log(alpha / beta));
    let union = 1.0 - (1.0 - s) * (1.0 - s);
    let eps = (s * d / (4.0 * l)).min((union * d - 1.0) / (4.0 * l));
    (eps > 0.0 && eps.is_finite()).then_some(eps)
}

/// Smallest `eps` used when none is feasible.
pub const EPS_FLOOR: f64 = 1e-3;

/// `0.01 s D+ / max(|ln(alpha/beta)|, 1)`, floored at [`EPS_FLOOR`] when that
/// is not a positive finite number.
pub fn fallback_eps(alpha: f64, beta: f64, s: f64) -> f64 {
    let d = chernoff_hellinger(alpha, beta).unwrap_or(0.0);
    let l = libm::fabs(libm::log(alpha / beta));
    let l = if l.is_nan() { 1.0 } else { l.max(1.0) };
    let eps = 0.01 * s * d / l;
    if eps > 0.0 && eps.is_finite() {
        eps
    } else {
        EPS_FLOOR
    }
}

fn check_total(sigma: &Labeling, n: usize) -> Result<()> {
    if sigma.len() != n {
        return Err(Error::SizeMismatch { expected: n, found: sigma.len() });
    }
    if !sigma.is_total() {
        return Err(Error::PartialLabeling);
    }
    Ok(())
}

/// `|N(v) ∩ V^{sigma(v)}| - |N(v) ∩ V^{-sigma(v)}|`.
pub fn maj_g(g: &Graph, v: usize, sigma: &Labeling) -> Result<i64> {
    check_total(sigma, g.n())?;
    g.check_vertex(v)?;
    Ok(maj_unchecked(g, v, sigma))
}

fn maj_unchecked(g: &Graph, v: usize, sigma: &Labeling) -> i64 {
    let own = i64::from(sigma.raw(v));
    g.adj(v).iter().map(|&w| own * i64::from(sigma.raw(w))).sum()
}

/// Vertices without an `eps ln n` majority in the model's direction, or
/// with degree at least `100 max{1, max(alpha, beta)} ln n`.
pub fn i_epsilon_set(g: &Graph, sigma: &Labeling, eps: f64, alpha: f64, beta: f64) -> Result<VertexSet> {
    check_total(sigma, g.n())?;
    check_rates(alpha, beta)?;
    if alpha == beta {
        return Err(Error::EqualRates);
    }
    let n = g.n();
    let log_n = libm::log(n.max(1) as f64);
    let weak = eps * log_n;
    let heavy = 100.0 * alpha.max(beta).max(1.0) * log_n;
    let dir = i64::from(direction(alpha, beta));
    Ok((0..n)
        .filter(|&v| ((dir * maj_unchecked(g, v, sigma)) as f64) <= weak || g.deg(v) as f64 >= heavy)
        .collect())
}

/// Almost-exact labeling of a single graph.
///
/// A global spectral partition fixes the orientation. The vertices are then
/// split at random into `m` holdout parts; each part is labeled by a
/// neighbourhood vote against a spectral partition of the graph with that
/// part removed.
pub fn mns_almost_exact(g: &Graph, alpha: f64, beta: f64, eps: f64, seed: u64) -> Result<Labeling> {
    let m = choose_m(eps, alpha, beta)?;
    let n = g.n();
    if n == 0 {
        return Ok(Labeling::undefined(0));
    }
    let dir = direction(alpha, beta);

    let global = leading_eigenpair(g, None, dir, None)?;
    let global_plus: Vec<bool> = global.vector.iter().map(|&x| x >= 0.0).collect();

    let mut rng = stream(seed, Purpose::HoldoutPartition);
    let mut order: Vec<(u64, usize)> = (0..n).map(|v| (rng.random_range(0..m), v)).collect();
    order.sort_unstable();

    let mut labels = Labeling::undefined(n);
    let mut active = vec![true; n];
    let mut side = vec![0i8; n];
    let mut start = 0;
    while start < n {
        let part_id = order[start].0;
        let end = start + order[start..].iter().take_while(|&&(id, _)| id == part_id).count();
        let part: Vec<usize> = order[start..end].iter().map(|&(_, v)| v).collect();
        start = end;

        for &v in &part {
            active[v] = false;
        }
        holdout_sides(g, &active, dir, &global.vector, &global_plus, &mut side)?;
        for &v in &part {
            let score: i64 = g.adj(v).iter().map(|&w| i64::from(side[w])).sum();
            labels.set(v, vote(score, dir));
        }
        for &v in &part {
            active[v] = true;
        }
    }
    Ok(labels)
}

// Fills `side` with +1 / -1 on the active vertices (0 elsewhere), oriented
// against the global partition.
fn holdout_sides(
    g: &Graph,
    active: &[bool],
    dir: i8,
    warm: &[f64],
    global_plus: &[bool],
    side: &mut [i8],
) -> Result<()> {
    let n = g.n();
    let pair = leading_eigenpair(g, Some(active), dir, Some(warm))?;
    let mut delta = 0usize;
    for v in 0..n {
        side[v] = if !active[v] {
            0
        } else if pair.vector[v] >= 0.0 {
            1
        } else {
            -1
        };
        if (side[v] == 1) != global_plus[v] {
            delta += 1;
        }
    }
    if 2 * delta >= n {
        side.iter_mut().for_each(|x| *x = -*x);
    }
    Ok(())
}

/// Output of [`label_kcore`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KcoreLabels {
    /// Defined exactly on the matched set M.
    pub labels: Labeling,
    /// The expanded deficit set, a superset of `[n] \ M`.
    pub f_bar: VertexSet,
    /// Vertices of `F_bar \ F` with no neighbour to vote over.
    pub degenerate: usize,
    /// Votes decided by the tie rule, degenerate ones included.
    pub ties: usize,
}

/// Labels the matched set of a k-core matching.
pub fn label_kcore(g1: &Graph, g2: &Graph, m: &Matching, cfg: &RecoveryConfig, seed: u64) -> Result<KcoreLabels> {
    check_eps(cfg.eps)?;
    if !is_kcore_matching(m, g1, g2, cfg.k)? {
        return Err(Error::NotKcoreMatching { k: cfg.k });
    }
    let f_bar = expanded_deficit(g2, m)?;
    let sigma1 = if f_bar.len() == g1.n() {
        // Nothing is voted with the preliminary labels; skip computing them.
        Labeling::constant(g1.n(), 1)
    } else {
        mns_almost_exact(g1, cfg.s * cfg.alpha, cfg.s * cfg.beta, cfg.eps, seed)?
    };
    refine_with(g1, g2, m, cfg, &sigma1, f_bar)
}

/// `F_bar = {i : i not in M, or mu(i) in F'}` where `F'` is the Łuczak
/// expansion of `[n] \ mu(M)` in G2.
pub fn expanded_deficit(g2: &Graph, m: &Matching) -> Result<VertexSet> {
    let n = m.n();
    if g2.n() != n {
        return Err(Error::SizeMismatch { expected: n, found: g2.n() });
    }
    let f_prime = luczak_expand(g2, &m.image_set().complement(n))?.to_mask(n);
    Ok((0..n).filter(|&i| m.get(i).is_none_or(|t| f_prime[t])).collect())
}

/// Steps after the preliminary labeling, with `sigma1` supplied by the caller.
pub fn refine_labels(g1: &Graph, g2: &Graph, m: &Matching, cfg: &RecoveryConfig, sigma1: &Labeling) -> Result<KcoreLabels> {
    check_total(sigma1, g1.n())?;
    let f_bar = expanded_deficit(g2, m)?;
    refine_with(g1, g2, m, cfg, sigma1, f_bar)
}

fn refine_with(
    g1: &Graph,
    g2: &Graph,
    m: &Matching,
    cfg: &RecoveryConfig,
    sigma1: &Labeling,
    f_bar: VertexSet,
) -> Result<KcoreLabels> {
    let n = g1.n();
    let dir = cfg.direction();
    let in_f_bar = f_bar.to_mask(n);
    let mut ties = 0usize;

    // Bulk: vote sigma1 over the union graph inside [n] \ F_bar.
    let union = union_graph(g1, g2, m)?.graph;
    let mut labels = Labeling::undefined(n);
    for i in (0..n).filter(|&i| !in_f_bar[i]) {
        let score: i64 = union
            .adj(i)
            .iter()
            .filter(|&&j| !in_f_bar[j])
            .map(|&j| i64::from(sigma1.raw(j)))
            .sum();
        ties += usize::from(score == 0);
        labels.set(i, vote(score, dir));
    }

    // F_bar \ F: vote the frozen bulk labels over the difference graph.
    let bulk = labels.clone();
    let diff = difference_graph(g1, g2, m)?.graph;
    let mut degenerate = 0usize;
    for i in f_bar.iter().filter(|&i| m.get(i).is_some()) {
        let mut seen = 0usize;
        let mut score = 0i64;
        for &j in diff.adj(i).iter().filter(|&&j| !in_f_bar[j]) {
            seen += 1;
            score += i64::from(bulk.raw(j));
        }
        degenerate += usize::from(seen == 0);
        ties += usize::from(score == 0);
        labels.set(i, vote(score, dir));
    }
    Ok(KcoreLabels { labels, f_bar, degenerate, ties })
}

/// How the pipeline obtains its k-core matching.
#[derive(Debug, Clone, Copy)]
pub enum Matcher<'a> {
    /// The value the matcher takes with high probability: the k-core of the
    /// intersection graph under the given (true) permutation.
    Oracle(&'a Permutation),
    /// Exhaustive search; small `n` only.
    Exact,
}

impl Matcher<'_> {
    pub fn run(&self, g1: &Graph, g2: &Graph, k: usize) -> Result<Matching> {
        match self {
            Matcher::Oracle(pi) => {
                let cap = intersection_graph(g1, g2, &pi.as_matching())?;
                Ok(Matching::restrict(pi, &k_core(&cap.graph, k)?))
            }
            Matcher::Exact => kcore_matching_exact(g1, g2, k),
        }
    }
}

/// Output of [`full_recovery`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Recovery {
    /// Total labeling of `[n]`.
    pub labels: Labeling,
    pub matching: Matching,
    pub f_bar: VertexSet,
    pub degenerate: usize,
    pub ties: usize,
}

/// Full pipeline: match, label the matched set, then label the rest by
/// voting over their G1 neighbours in the matched set.
pub fn full_recovery(g1: &Graph, g2: &Graph, cfg: &RecoveryConfig, seed: u64, matcher: Matcher<'_>) -> Result<Recovery> {
    if g2.n() != g1.n() {
        return Err(Error::SizeMismatch { expected: g1.n(), found: g2.n() });
    }
    let matching = matcher.run(g1, g2, cfg.k)?;
    full_recovery_with(g1, g2, cfg, seed, matching)
}

/// [`full_recovery`] from an already computed matching.
pub fn full_recovery_with(g1: &Graph, g2: &Graph, cfg: &RecoveryConfig, seed: u64, matching: Matching) -> Result<Recovery> {
    let KcoreLabels { mut labels, f_bar, degenerate, mut ties } = label_kcore(g1, g2, &matching, cfg, seed)?;
    let dir = cfg.direction();
    let core = labels.clone();
    for i in (0..g1.n()).filter(|&i| matching.get(i).is_none()) {
        let score: i64 = g1.adj(i).iter().map(|&j| i64::from(core.raw(j))).sum();
        ties += usize::from(score == 0);
        labels.set(i, vote(score, dir));
    }
    Ok(Recovery { labels, matching, f_bar, degenerate, ties })
}
