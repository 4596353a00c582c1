// SPDX-License-Identifier: Apache-2.0

//! Two-way spectral partition from the centred adjacency operator.
//!
//! The operator is `A - (2|E| / n^2) J` restricted to a set of active
//! vertices. Its extreme eigenvector is found by power iteration and the
//! partition is read off the entry signs.

use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::rng::{stream, Purpose};

/// Iteration cap for one power-iteration run.
pub const MAX_ITERATIONS: usize = 200;
/// Stop once successive unit iterates differ by at most this much (up to sign).
pub const TOLERANCE: f64 = 1e-8;

/// Result of [`leading_eigenpair`].
#[derive(Debug, Clone, PartialEq)]
pub struct Eigenpair {
    /// Unit vector; inactive entries are zero.
    pub vector: Vec<f64>,
    /// Rayleigh quotient of `vector`.
    pub value: f64,
    pub iterations: usize,
    pub converged: bool,
}

struct Centered<'a> {
    g: &'a Graph,
    active: Option<&'a [bool]>,
    mean: f64,
}

impl<'a> Centered<'a> {
    fn new(g: &'a Graph, active: Option<&'a [bool]>) -> Self {
        let (count, twice_edges) = match active {
            None => (g.n(), 2 * g.edge_count()),
            Some(mask) => {
                let mut count = 0usize;
                let mut twice = 0usize;
                for v in (0..g.n()).filter(|&v| mask[v]) {
                    count += 1;
                    twice += g.adj(v).iter().filter(|&&w| mask[w]).count();
                }
                (count, twice)
            }
        };
        let mean = if count == 0 {
            0.0
        } else {
            twice_edges as f64 / (count as f64 * count as f64)
        };
        Self { g, active, mean }
    }

    fn is_active(&self, v: usize) -> bool {
        self.active.is_none_or(|m| m[v])
    }

    // y = (M - shift I) x, assuming x vanishes off the active set.
    fn apply(&self, x: &[f64], shift: f64, y: &mut [f64]) {
        let total: f64 = x.iter().sum();
        let offset = self.mean * total;
        for (v, out) in y.iter_mut().enumerate() {
            *out = if self.is_active(v) {
                let s: f64 = self.g.adj(v).iter().map(|&w| x[w]).sum();
                s - offset - shift * x[v]
            } else {
                0.0
            };
        }
    }
}

fn norm(x: &[f64]) -> f64 {
    libm::sqrt(x.iter().map(|a| a * a).sum())
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Deterministic start vector for a graph on `n` vertices.
pub fn default_start(n: usize) -> Vec<f64> {
    let mut rng = stream(n as u64, Purpose::PowerStart);
    (0..n).map(|_| rng.random_range(-1.0..1.0)).collect()
}

fn run(op: &Centered<'_>, start: &[f64], shift: f64) -> Eigenpair {
    let n = op.g.n();
    let mut x: Vec<f64> = (0..n).map(|v| if op.is_active(v) { start[v] } else { 0.0 }).collect();
    let mut y = vec![0.0; n];
    let mut converged = false;
    let mut iterations = 0;

    let size = norm(&x);
    if size == 0.0 {
        return Eigenpair { vector: x, value: 0.0, iterations, converged: true };
    }
    x.iter_mut().for_each(|a| *a /= size);

    while iterations < MAX_ITERATIONS {
        iterations += 1;
        op.apply(&x, shift, &mut y);
        let size = norm(&y);
        if size == 0.0 {
            // x lies in the kernel; it is an eigenvector for `shift`.
            converged = true;
            break;
        }
        y.iter_mut().for_each(|a| *a /= size);
        let mut plus = 0.0;
        let mut minus = 0.0;
        for (a, b) in x.iter().zip(&y) {
            plus += (b - a) * (b - a);
            minus += (b + a) * (b + a);
        }
        core::mem::swap(&mut x, &mut y);
        if libm::sqrt(plus.min(minus)) <= TOLERANCE {
            converged = true;
            break;
        }
    }
    op.apply(&x, 0.0, &mut y);
    let value = dot(&x, &y);
    Eigenpair { vector: x, value, iterations, converged }
}

fn check_sign(sign: i8) -> Result<()> {
    if sign == 1 || sign == -1 {
        Ok(())
    } else {
        Err(Error::param("sign", "must be +1 or -1"))
    }
}

/// Eigenpair at the `sign` end of the spectrum of the centred operator on the
/// `active` vertices (all vertices if `None`).
///
/// Plain power iteration finds the eigenvalue of largest modulus. When that
/// lands on the wrong end, the run is repeated on `M - lambda I`, which moves
/// the wanted end to the largest modulus.
pub fn leading_eigenpair(g: &Graph, active: Option<&[bool]>, sign: i8, start: Option<&[f64]>) -> Result<Eigenpair> {
    check_sign(sign)?;
    let n = g.n();
    if let Some(mask) = active {
        if mask.len() != n {
            return Err(Error::SizeMismatch { expected: n, found: mask.len() });
        }
    }
    if let Some(x) = start {
        if x.len() != n {
            return Err(Error::SizeMismatch { expected: n, found: x.len() });
        }
    }
    let fallback;
    let start = match start {
        Some(x) => x,
        None => {
            fallback = default_start(n);
            &fallback
        }
    };
    let op = Centered::new(g, active);
    if op.mean == 0.0 {
        // No active edges, so the operator is zero.
        let vector = vec![0.0; n];
        return Ok(Eigenpair { vector, value: 0.0, iterations: 0, converged: true });
    }
    let first = run(&op, start, 0.0);
    if first.value * f64::from(sign) >= 0.0 {
        return Ok(first);
    }
    Ok(run(&op, start, first.value))
}

/// Splits `vector` by sign over the active vertices, zeros going to `U+`.
pub fn sign_split(vector: &[f64], active: Option<&[bool]>) -> (VertexSet, VertexSet) {
    let mut plus = Vec::new();
    let mut minus = Vec::new();
    for (v, &x) in vector.iter().enumerate() {
        if active.is_some_and(|m| !m[v]) {
            continue;
        }
        if x >= 0.0 {
            plus.push(v);
        } else {
            minus.push(v);
        }
    }
    (VertexSet::from_unsorted(plus), VertexSet::from_unsorted(minus))
}

/// Two-way partition `(U+, U-)` of all vertices of `g`.
///
/// `sign = +1` uses the top of the spectrum (assortative communities),
/// `sign = -1` the bottom. An edgeless graph puts every vertex in `U+`.
pub fn spectral_partition(g: &Graph, sign: i8) -> Result<(VertexSet, VertexSet)> {
    let pair = leading_eigenpair(g, None, sign, None)?;
    Ok(sign_split(&pair.vector, None))
}
