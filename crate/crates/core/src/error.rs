// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
    #[error("size mismatch: expected {expected}, found {found}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("matching is not injective: image {0} used twice")]
    NotInjective(usize),
    #[error("not a permutation of 0..{0}")]
    NotAPermutation(usize),
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter {
        name: &'static str,
        reason: &'static str,
    },
    #[error("labeling is not defined on every vertex")]
    PartialLabeling,
    #[error("instance carries no edge-class partition")]
    MissingPartition,
    #[error("exact enumeration supports n <= {max}, got n = {n}")]
    TooLargeForEnumeration { n: usize, max: usize },
    #[error("alpha == beta: community direction is undefined")]
    EqualRates,
    #[error("matching is not a {k}-core matching")]
    NotKcoreMatching { k: usize },
}

impl Error {
    pub(crate) fn param(name: &'static str, reason: &'static str) -> Self {
        Error::InvalidParameter { name, reason }
    }
}
