// SPDX-License-Identifier: Apache-2.0

//! Threshold functions and the phase-diagram classifier.

use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};

/// Default half-width of the boundary band in [`classify_region`].
pub const DEFAULT_BOUNDARY_TOL: f64 = 1e-9;

fn check_rates(alpha: f64, beta: f64) -> Result<()> {
    if !(alpha >= 0.0 && alpha.is_finite()) {
        return Err(Error::param("alpha", "must be finite and nonnegative"));
    }
    if !(beta >= 0.0 && beta.is_finite()) {
        return Err(Error::param("beta", "must be finite and nonnegative"));
    }
    Ok(())
}

/// Chernoff-Hellinger divergence `D+(a, b) = (a + b)/2 - sqrt(a b)`.
pub fn chernoff_hellinger(alpha: f64, beta: f64) -> Result<f64> {
    check_rates(alpha, beta)?;
    // ((sqrt a - sqrt b)^2)/2 is the cancellation-free form.
    let d = libm::sqrt(alpha) - libm::sqrt(beta);
    Ok(d * d / 2.0)
}

/// Connectivity threshold `T_c(a, b) = (a + b)/2`.
pub fn connectivity_threshold(alpha: f64, beta: f64) -> Result<f64> {
    check_rates(alpha, beta)?;
    Ok((alpha + beta) / 2.0)
}

/// Region of the `(alpha, beta, s)` phase diagram for exact recovery.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RegionLabel {
    /// Recoverable from G1 alone.
    Green,
    /// Exact matching possible, then recovery from both graphs.
    Cyan,
    /// Neither single-graph recovery nor exact matching, yet recoverable.
    DarkBlue,
    /// Impossible from the pair, possible if the permutation were known.
    Pink,
    /// Impossible even with the permutation known.
    Red,
    /// Some consulted discriminant lies within tolerance of 1.
    Boundary,
}

impl RegionLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            RegionLabel::Green => "green",
            RegionLabel::Cyan => "cyan",
            RegionLabel::DarkBlue => "dark-blue",
            RegionLabel::Pink => "pink",
            RegionLabel::Red => "red",
            RegionLabel::Boundary => "boundary",
        }
    }

    /// Whether exact recovery is predicted to succeed.
    pub fn achievable(self) -> Option<bool> {
        match self {
            RegionLabel::Green | RegionLabel::Cyan | RegionLabel::DarkBlue => Some(true),
            RegionLabel::Pink | RegionLabel::Red => Some(false),
            RegionLabel::Boundary => None,
        }
    }
}

impl fmt::Display for RegionLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for RegionLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "green" => RegionLabel::Green,
            "cyan" => RegionLabel::Cyan,
            "dark-blue" => RegionLabel::DarkBlue,
            "pink" => RegionLabel::Pink,
            "red" => RegionLabel::Red,
            "boundary" => RegionLabel::Boundary,
            _ => return Err(Error::param("region", "unknown label")),
        })
    }
}

/// The four discriminants compared against 1 by [`classify_region`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Discriminants {
    /// `s D+`: single-graph recovery.
    pub single_graph: f64,
    /// `(1 - (1-s)^2) D+`: recovery with the permutation known.
    pub known_matching: f64,
    /// `s^2 T_c`: exact graph matching.
    pub matching: f64,
    /// `s^2 T_c + s(1-s) D+`: the combined threshold.
    pub combined: f64,
}

impl Discriminants {
    pub fn new(alpha: f64, beta: f64, s: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&s) {
            return Err(Error::param("s", "must lie in [0, 1]"));
        }
        let dplus = chernoff_hellinger(alpha, beta)?;
        let tc = connectivity_threshold(alpha, beta)?;
        let union = 1.0 - (1.0 - s) * (1.0 - s);
        Ok(Self {
            single_graph: s * dplus,
            known_matching: union * dplus,
            matching: s * s * tc,
            combined: s * s * tc + s * (1.0 - s) * dplus,
        })
    }
}

/// Classifies a parameter point.
///
/// Tests run in a fixed order: `s D+ > 1` gives Green; otherwise
/// `(1-(1-s)^2) D+ < 1` gives Red; otherwise `s^2 T_c > 1` gives Cyan;
/// otherwise the combined threshold splits DarkBlue from Pink. A discriminant
/// consulted on the way that lies within `tol` of 1 yields Boundary.
pub fn classify_region(alpha: f64, beta: f64, s: f64, tol: f64) -> Result<RegionLabel> {
    let d = Discriminants::new(alpha, beta, s)?;
    let near = |x: f64| libm::fabs(x - 1.0) <= tol;

    if near(d.single_graph) {
        return Ok(RegionLabel::Boundary);
    }
    if d.single_graph > 1.0 {
        return Ok(RegionLabel::Green);
    }
    if near(d.known_matching) {
        return Ok(RegionLabel::Boundary);
    }
    if d.known_matching < 1.0 {
        return Ok(RegionLabel::Red);
    }
    if near(d.matching) {
        return Ok(RegionLabel::Boundary);
    }
    if d.matching > 1.0 {
        return Ok(RegionLabel::Cyan);
    }
    if near(d.combined) {
        return Ok(RegionLabel::Boundary);
    }
    Ok(if d.combined > 1.0 {
        RegionLabel::DarkBlue
    } else {
        RegionLabel::Pink
    })
}
