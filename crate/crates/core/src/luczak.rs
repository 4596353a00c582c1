// SPDX-License-Identifier: Apache-2.0

//! Greedy closure of a vertex set under the two-neighbour rule.

use alloc::collections::BinaryHeap;
use alloc::vec;
use core::cmp::Reverse;

use crate::error::Result;
use crate::graph::{Graph, VertexSet};

/// Grows `u` by absorbing, one at a time, the smallest outside vertex with at
/// least two neighbours inside, until no such vertex remains.
///
/// Every vertex outside the result has at most one neighbour in it.
pub fn luczak_expand(g: &Graph, u: &VertexSet) -> Result<VertexSet> {
    let n = g.n();
    u.check_bound(n)?;
    let mut inside = u.to_mask(n);
    let mut count = vec![0usize; n];
    let mut heap = BinaryHeap::new();

    for v in u.iter() {
        absorb(g, v, &inside, &mut count, &mut heap);
    }
    // A vertex enters the heap once, when its count first reaches 2; it stays
    // eligible from then on, so the heap minimum is always the next pick.
    while let Some(Reverse(v)) = heap.pop() {
        if inside[v] {
            continue;
        }
        inside[v] = true;
        absorb(g, v, &inside, &mut count, &mut heap);
    }
    Ok(VertexSet::from_mask(&inside))
}

fn absorb(g: &Graph, v: usize, inside: &[bool], count: &mut [usize], heap: &mut BinaryHeap<Reverse<usize>>) {
    for &w in g.adj(v) {
        count[w] += 1;
        if !inside[w] && count[w] == 2 {
            heap.push(Reverse(w));
        }
    }
}

/// True iff every vertex outside `u` has at most one neighbour in `u`.
pub fn is_luczak_closed(g: &Graph, u: &VertexSet) -> bool {
    let inside = u.to_mask(g.n());
    (0..g.n()).filter(|&v| !inside[v]).all(|v| g.adj(v).iter().filter(|&&w| inside[w]).count() <= 1)
}
