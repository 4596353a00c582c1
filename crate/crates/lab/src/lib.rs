// SPDX-License-Identifier: Apache-2.0

//! File formats, configuration records, the Monte Carlo harness and the
//! `csbm` command line for [`csbm_core`].

pub mod config;
pub mod error;
pub mod harness;
pub mod io;

pub use error::{LabError, Result};
