// SPDX-License-Identifier: Apache-2.0

//! Correlated SBM parameters and the two equivalent samplers.

use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, Permutation};
use crate::labeling::Labeling;
use crate::rng::{stream, Purpose};

/// `CSBM(n, alpha log n / n, beta log n / n, s)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    pub n: usize,
    pub alpha: f64,
    pub beta: f64,
    pub s: f64,
}

impl ModelParams {
    /// Validates the parameters. Edge probabilities above 1 are rejected,
    /// never clamped.
    pub fn new(n: usize, alpha: f64, beta: f64, s: f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::param("n", "must be at least 2"));
        }
        if !(alpha >= 0.0 && alpha.is_finite()) {
            return Err(Error::param("alpha", "must be finite and nonnegative"));
        }
        if !(beta >= 0.0 && beta.is_finite()) {
            return Err(Error::param("beta", "must be finite and nonnegative"));
        }
        if !(0.0..=1.0).contains(&s) {
            return Err(Error::param("s", "must lie in [0, 1]"));
        }
        let params = Self { n, alpha, beta, s };
        if params.p() > 1.0 {
            return Err(Error::param("alpha", "alpha log n / n exceeds 1"));
        }
        if params.q() > 1.0 {
            return Err(Error::param("beta", "beta log n / n exceeds 1"));
        }
        Ok(params)
    }

    fn scale(&self) -> f64 {
        libm::log(self.n as f64) / self.n as f64
    }

    /// Intra-community edge probability.
    pub fn p(&self) -> f64 {
        self.alpha * self.scale()
    }

    /// Inter-community edge probability.
    pub fn q(&self) -> f64 {
        self.beta * self.scale()
    }
}

/// Class of an unordered pair in the four-way partition. `E_ab` means the
/// pair may carry an edge in G1 iff `a = 1` and in G2' iff `b = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[repr(u8)]
pub enum EdgeClass {
    E00 = 0,
    E01 = 1,
    E10 = 2,
    E11 = 3,
}

impl EdgeClass {
    pub const ALL: [EdgeClass; 4] = [EdgeClass::E00, EdgeClass::E01, EdgeClass::E10, EdgeClass::E11];

    pub fn in_first(self) -> bool {
        matches!(self, EdgeClass::E10 | EdgeClass::E11)
    }

    pub fn in_second(self) -> bool {
        matches!(self, EdgeClass::E01 | EdgeClass::E11)
    }

    /// Sampling weight `s_ab` of the class.
    pub fn weight(self, s: f64) -> f64 {
        match self {
            EdgeClass::E00 => (1.0 - s) * (1.0 - s),
            EdgeClass::E01 | EdgeClass::E10 => s * (1.0 - s),
            EdgeClass::E11 => s * s,
        }
    }

    fn from_u8(x: u8) -> Self {
        Self::ALL[usize::from(x)]
    }
}

/// Class of every unordered pair `{i, j}`, packed in row-major upper
/// triangular order.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgePartition {
    n: usize,
    s: f64,
    classes: Vec<u8>,
}

impl EdgePartition {
    fn index(&self, i: usize, j: usize) -> usize {
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        i * (2 * self.n - i - 1) / 2 + (j - i - 1)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Retention probability the classes were drawn with.
    pub fn s(&self) -> f64 {
        self.s
    }

    /// Class of `{i, j}`. Panics on `i == j` or out-of-range ids.
    pub fn class(&self, i: usize, j: usize) -> EdgeClass {
        assert!(i != j && i < self.n && j < self.n);
        EdgeClass::from_u8(self.classes[self.index(i, j)])
    }
}

/// One sampled instance with its ground truth.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelatedPair {
    pub g1: Graph,
    pub g2: Graph,
    /// Hidden correspondence: vertex `i` of G1 is `pi_star(i)` in G2.
    pub pi_star: Permutation,
    /// Community labels in G1 coordinates.
    pub sigma_star: Labeling,
    pub partition: Option<EdgePartition>,
}

impl CorrelatedPair {
    pub fn n(&self) -> usize {
        self.g1.n()
    }

    /// Labels in G2 coordinates, `sigma* o pi*^{-1}`.
    pub fn sigma_star2(&self) -> Labeling {
        let n = self.n();
        let mut values = vec![0i8; n];
        for i in 0..n {
            values[self.pi_star.apply(i)] = self.sigma_star.raw(i);
        }
        Labeling::from_signs(values).expect("ground truth is total")
    }

    /// Checks the structural invariants of an instance.
    pub fn validate(&self) -> Result<()> {
        let n = self.n();
        for found in [self.g2.n(), self.pi_star.len(), self.sigma_star.len()] {
            if found != n {
                return Err(Error::SizeMismatch { expected: n, found });
            }
        }
        if !self.sigma_star.is_total() {
            return Err(Error::PartialLabeling);
        }
        if let Some(part) = &self.partition {
            let inv = self.pi_star.inverse();
            let g1_ok = self.g1.edges().all(|(i, j)| part.class(i, j).in_first());
            let g2_ok = self
                .g2
                .edges()
                .all(|(a, b)| part.class(inv.apply(a), inv.apply(b)).in_second());
            if !(g1_ok && g2_ok) {
                return Err(Error::param("partition", "edge outside its admissible classes"));
            }
        }
        Ok(())
    }
}

fn sample_labels(n: usize, seed: u64) -> Labeling {
    let mut rng = stream(seed, Purpose::Labels);
    let values = (0..n).map(|_| if rng.random_bool(0.5) { 1 } else { -1 }).collect();
    Labeling::from_signs(values).expect("signs")
}

fn sample_permutation(n: usize, seed: u64) -> Permutation {
    let mut rng = stream(seed, Purpose::Permutation);
    let mut map: Vec<usize> = (0..n).collect();
    map.shuffle(&mut rng);
    Permutation::from_vec(map).expect("shuffle is a bijection")
}

/// Parent SBM edges in `i < j` order.
fn sample_parent(params: &ModelParams, sigma: &Labeling, seed: u64) -> Vec<(usize, usize)> {
    let (p, q) = (params.p(), params.q());
    let mut rng = stream(seed, Purpose::ParentEdges);
    let mut edges = Vec::new();
    for i in 0..params.n {
        for j in i + 1..params.n {
            let prob = if sigma.raw(i) == sigma.raw(j) { p } else { q };
            if rng.random::<f64>() < prob {
                edges.push((i, j));
            }
        }
    }
    edges
}

fn relabel(n: usize, edges: &[(usize, usize)], pi: &Permutation) -> Result<Graph> {
    Graph::from_edges(n, edges.iter().map(|&(i, j)| (pi.apply(i), pi.apply(j))))
}

/// Samples a pair by subsampling one parent SBM twice.
///
/// Draws `sigma*` uniformly, the parent graph, two independent
/// Bernoulli(`s`) retentions of its edges (G1 and G2'), and a uniform
/// `pi*`; G2 is G2' relabeled by `pi*`.
pub fn generate_subsampling(params: &ModelParams, seed: u64) -> Result<CorrelatedPair> {
    let params = ModelParams::new(params.n, params.alpha, params.beta, params.s)?;
    let n = params.n;
    let sigma = sample_labels(n, seed);
    let parent = sample_parent(&params, &sigma, seed);

    let mut keep1 = stream(seed, Purpose::RetainFirst);
    let mut keep2 = stream(seed, Purpose::RetainSecond);
    let mut first = Vec::new();
    let mut second = Vec::new();
    for &e in &parent {
        if keep1.random::<f64>() < params.s {
            first.push(e);
        }
        if keep2.random::<f64>() < params.s {
            second.push(e);
        }
    }
    let pi_star = sample_permutation(n, seed);
    Ok(CorrelatedPair {
        g1: Graph::from_sorted_unique(n, &first),
        g2: relabel(n, &second, &pi_star)?,
        pi_star,
        sigma_star: sigma,
        partition: None,
    })
}

/// Samples a pair through the random four-way partition of all vertex pairs.
///
/// Each pair lands in `E00, E01, E10, E11` with weights
/// `(1-s)^2, s(1-s), s(1-s), s^2`, independently carries a parent edge with
/// probability `p` or `q`, and contributes that edge to G1 for `E10 ∪ E11`
/// and to G2' for `E01 ∪ E11`.
pub fn generate_partition(params: &ModelParams, seed: u64) -> Result<CorrelatedPair> {
    let params = ModelParams::new(params.n, params.alpha, params.beta, params.s)?;
    let n = params.n;
    let s = params.s;
    let sigma = sample_labels(n, seed);
    let (p, q) = (params.p(), params.q());

    let cut00 = EdgeClass::E00.weight(s);
    let cut01 = cut00 + EdgeClass::E01.weight(s);
    let cut10 = cut01 + EdgeClass::E10.weight(s);

    let mut class_rng = stream(seed, Purpose::EdgeClasses);
    let mut edge_rng = stream(seed, Purpose::ParentEdges);
    let mut classes = Vec::with_capacity(n * (n - 1) / 2);
    let mut first = Vec::new();
    let mut second = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let u: f64 = class_rng.random();
            let class = if u < cut00 {
                EdgeClass::E00
            } else if u < cut01 {
                EdgeClass::E01
            } else if u < cut10 {
                EdgeClass::E10
            } else {
                EdgeClass::E11
            };
            classes.push(class as u8);
            let prob = if sigma.raw(i) == sigma.raw(j) { p } else { q };
            if edge_rng.random::<f64>() < prob {
                if class.in_first() {
                    first.push((i, j));
                }
                if class.in_second() {
                    second.push((i, j));
                }
            }
        }
    }
    let pi_star = sample_permutation(n, seed);
    Ok(CorrelatedPair {
        g1: Graph::from_sorted_unique(n, &first),
        g2: relabel(n, &second, &pi_star)?,
        pi_star,
        sigma_star: sigma,
        partition: Some(EdgePartition { n, s, classes }),
    })
}

/// Which bound of the partition-regularity event failed first.
#[derive(Debug, Clone, PartialEq)]
pub enum EventFViolation {
    /// `|V^+|` or `|V^-|` is outside `n/2 ± n^{3/4}`.
    Balance { plus: usize, minus: usize, slack: f64 },
    /// Potential-neighbor count of `vertex` in `class` (toward its own
    /// community when `same_side`) is outside `[lower, upper]`.
    Neighborhood {
        vertex: usize,
        class: EdgeClass,
        same_side: bool,
        count: usize,
        lower: f64,
        upper: f64,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct EventFReport {
    pub holds: bool,
    pub violation: Option<EventFViolation>,
}

/// Checks the partition-regularity event on an instance built by
/// [`generate_partition`].
///
/// Community balance must hold within `n^{3/4}`. For `s` strictly inside
/// `(0, 1)`, every vertex's count of same-side and cross-side partners in
/// each class `E_ab` must lie within `s_ab (|V^±| ± n^{3/4})`. At `s ∈ {0, 1}`
/// the balance condition alone implies the event, so only it is checked.
pub fn check_event_f(pair: &CorrelatedPair) -> Result<EventFReport> {
    let part = pair.partition.as_ref().ok_or(Error::MissingPartition)?;
    let n = pair.n();
    let sigma = &pair.sigma_star;
    let slack = libm::pow(n as f64, 0.75);
    let plus = sigma.count(1);
    let minus = sigma.count(-1);
    let half = n as f64 / 2.0;
    let balanced = |size: usize| libm::fabs(size as f64 - half) <= slack;
    if !(balanced(plus) && balanced(minus)) {
        return Ok(EventFReport {
            holds: false,
            violation: Some(EventFViolation::Balance { plus, minus, slack }),
        });
    }

    let s = part.s;
    if s == 0.0 || s == 1.0 {
        return Ok(EventFReport { holds: true, violation: None });
    }

    // counts[v][class][same_side as usize]
    let mut counts = vec![[[0usize; 2]; 4]; n];
    for i in 0..n {
        for j in i + 1..n {
            let c = usize::from(part.classes[part.index(i, j)]);
            let same = usize::from(sigma.raw(i) == sigma.raw(j));
            counts[i][c][same] += 1;
            counts[j][c][same] += 1;
        }
    }
    for (v, per_class) in counts.iter().enumerate() {
        let own = if sigma.raw(v) == 1 { plus } else { minus } as f64;
        let other = if sigma.raw(v) == 1 { minus } else { plus } as f64;
        for class in EdgeClass::ALL {
            let w = class.weight(s);
            for (same_side, size) in [(true, own), (false, other)] {
                let count = per_class[class as usize][usize::from(same_side)];
                let lower = w * (size - slack);
                let upper = w * (size + slack);
                let c = count as f64;
                if c < lower || c > upper {
                    return Ok(EventFReport {
                        holds: false,
                        violation: Some(EventFViolation::Neighborhood {
                            vertex: v,
                            class,
                            same_side,
                            count,
                            lower,
                            upper,
                        }),
                    });
                }
            }
        }
    }
    Ok(EventFReport { holds: true, violation: None })
}
