// SPDX-License-Identifier: Apache-2.0

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::VertexSet;

/// Community assignment with values in `{-1, +1}`.
///
/// A labeling may be partial: undefined vertices hold `0` internally and are
/// reported by [`Labeling::get`] as `None`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Labeling {
    values: Vec<i8>,
}

impl Labeling {
    /// Total labeling; every entry must be `+1` or `-1`.
    pub fn from_signs(values: Vec<i8>) -> Result<Self> {
        if values.iter().any(|&x| x != 1 && x != -1) {
            return Err(Error::param("labeling", "entries must be +1 or -1"));
        }
        Ok(Self { values })
    }

    /// Labeling defined nowhere on `0..n`.
    pub fn undefined(n: usize) -> Self {
        Self { values: alloc::vec![0; n] }
    }

    pub fn constant(n: usize, sign: i8) -> Self {
        debug_assert!(sign == 1 || sign == -1);
        Self { values: alloc::vec![sign; n] }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    #[inline]
    pub fn get(&self, v: usize) -> Option<i8> {
        match self.values[v] {
            0 => None,
            x => Some(x),
        }
    }

    /// Value with undefined entries read as `0`, for vote arithmetic.
    #[inline]
    pub(crate) fn raw(&self, v: usize) -> i8 {
        self.values[v]
    }

    pub fn set(&mut self, v: usize, sign: i8) {
        debug_assert!(sign == 1 || sign == -1);
        self.values[v] = sign;
    }

    pub fn is_total(&self) -> bool {
        self.values.iter().all(|&x| x != 0)
    }

    pub fn defined(&self) -> VertexSet {
        VertexSet::from_mask(&self.values.iter().map(|&x| x != 0).collect::<Vec<_>>())
    }

    /// `V^+` (or `V^-` for `sign = -1`).
    pub fn side(&self, sign: i8) -> VertexSet {
        VertexSet::from_mask(&self.values.iter().map(|&x| x == sign).collect::<Vec<_>>())
    }

    pub fn count(&self, sign: i8) -> usize {
        self.values.iter().filter(|&&x| x == sign).count()
    }

    pub fn negated(&self) -> Self {
        Self {
            values: self.values.iter().map(|&x| -x).collect(),
        }
    }

    /// Raw values; `0` marks undefined entries.
    pub fn as_slice(&self) -> &[i8] {
        &self.values
    }

    /// Vertices where `self` disagrees with `truth` after the better of the
    /// two global sign choices.
    pub fn errors_against(&self, truth: &Labeling) -> Result<VertexSet> {
        check_pair(self, truth)?;
        let mismatch: Vec<bool> = self.values.iter().zip(&truth.values).map(|(a, b)| a != b).collect();
        let wrong = mismatch.iter().filter(|&&x| x).count();
        if 2 * wrong <= self.len() {
            Ok(VertexSet::from_mask(&mismatch))
        } else {
            Ok(VertexSet::from_mask(&mismatch.iter().map(|x| !x).collect::<Vec<_>>()))
        }
    }
}

fn check_pair(a: &Labeling, b: &Labeling) -> Result<()> {
    if a.len() != b.len() {
        return Err(Error::SizeMismatch { expected: b.len(), found: a.len() });
    }
    if !a.is_total() || !b.is_total() {
        return Err(Error::PartialLabeling);
    }
    Ok(())
}

/// `(1/n) |sum_i sig_hat(i) sig_star(i)|`.
pub fn overlap(sig_hat: &Labeling, sig_star: &Labeling) -> Result<f64> {
    check_pair(sig_hat, sig_star)?;
    if sig_hat.is_empty() {
        return Err(Error::param("labeling", "empty"));
    }
    let sum: i64 = sig_hat
        .values
        .iter()
        .zip(&sig_star.values)
        .map(|(&a, &b)| i64::from(a) * i64::from(b))
        .sum();
    Ok(sum.unsigned_abs() as f64 / sig_hat.len() as f64)
}
