// SPDX-License-Identifier: Apache-2.0

//! Exact community recovery in correlated stochastic block models.
//!
//! The crate samples correlated SBM pairs `(G1, G2)`, runs the k-core matching
//! plus labeling pipeline that recovers the planted two-community partition,
//! and exposes the genie-aided MAP machinery used to certify impossibility.
//! Everything here is a pure function of its inputs and an explicit seed.
//!
//! Only `core` and `alloc` are used, so the crate builds for `no_std`
//! targets that provide an allocator. File formats, the Monte Carlo harness
//! and the command line live in the companion `csbm-lab` crate.

#![no_std]

extern crate alloc;

pub mod error;
pub mod graph;
pub mod labeling;
pub mod luczak;
pub mod map_oracle;
pub mod matching;
pub mod model;
pub mod recovery;
pub mod rng;
pub mod spectral;
pub mod thresholds;

pub use error::{Error, Result};
pub use graph::{Graph, MatchedGraph, Matching, Permutation, VertexSet};
pub use labeling::{overlap, Labeling};
pub use model::{CorrelatedPair, EdgeClass, EdgePartition, ModelParams};
pub use thresholds::{chernoff_hellinger, classify_region, connectivity_threshold, RegionLabel};

/// Core parameter used throughout the pipeline.
pub const DEFAULT_K: usize = 13;
