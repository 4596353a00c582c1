// SPDX-License-Identifier: Apache-2.0

//! Seeded trials and parameter sweeps.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use csbm_core::map_oracle::{map_estimate, map_failure_witness, witness_counts, MapContext};
use csbm_core::recovery::{full_recovery_with, Matcher, RecoveryConfig};
use csbm_core::rng::derive_seed;
use csbm_core::thresholds::DEFAULT_BOUNDARY_TOL;
use csbm_core::{classify_region, overlap, CorrelatedPair, ModelParams, RegionLabel, DEFAULT_K};
use rayon::prelude::*;

use crate::error::{LabError, Result};
use crate::io::Generator;

/// First line of every sweep CSV.
pub const SWEEP_SCHEMA: &str = "# csbm-sweep v1";
pub const SWEEP_COLUMNS: &str =
    "alpha,beta,s,n,pipeline,trials,success_rate,mean_overlap,mean_F,mean_F_bar,witness_rate,region,status";
pub const WITNESS_COLUMNS: &str = "seed,n,alpha,beta,s,r_star,s_star,w_plus,w_minus,witness";

/// Per-trial MAP diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct WitnessRecord {
    pub seed: u64,
    pub n: usize,
    pub alpha: f64,
    pub beta: f64,
    pub s: f64,
    pub r_star: usize,
    pub s_star: usize,
    pub w_plus: usize,
    pub w_minus: usize,
    pub witness: bool,
    /// Overlap of the MAP estimate with the truth.
    pub map_overlap: f64,
}

impl WitnessRecord {
    pub fn compute(pair: &CorrelatedPair, params: &ModelParams, seed: u64) -> Result<Self> {
        let ctx = MapContext::new(pair, params.alpha, params.beta)?;
        let estimate = map_estimate(&ctx)?;
        let (w_plus, w_minus) = witness_counts(&ctx);
        Ok(Self {
            seed,
            n: params.n,
            alpha: params.alpha,
            beta: params.beta,
            s: params.s,
            r_star: ctx.r_star.len(),
            s_star: ctx.s_star.len(),
            w_plus,
            w_minus,
            witness: map_failure_witness(&ctx).is_some(),
            map_overlap: overlap(&estimate, &pair.sigma_star)?,
        })
    }

    /// One row matching [`WITNESS_COLUMNS`], without a newline.
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{}",
            self.seed,
            self.n,
            self.alpha,
            self.beta,
            self.s,
            self.r_star,
            self.s_star,
            self.w_plus,
            self.w_minus,
            u8::from(self.witness)
        )
    }
}

/// Deterministic part of a trial.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialOutcome {
    pub seed: u64,
    pub params: ModelParams,
    pub eps: f64,
    pub k: usize,
    /// `|M|`.
    pub matched: usize,
    /// `|F| = n - |M|`.
    pub deficit: usize,
    /// `|F_bar|`.
    pub expansion: usize,
    pub degenerate: usize,
    pub overlap: f64,
    pub exact: bool,
    pub witness: Option<WitnessRecord>,
}

/// Wall-clock time per stage.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Timings {
    pub generate: Duration,
    pub matching: Duration,
    pub recovery: Duration,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrialResult {
    pub outcome: TrialOutcome,
    pub timings: Timings,
}

/// Options beyond the model and recovery parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrialOptions {
    pub generator: Generator,
    pub with_witness: bool,
}

impl Default for TrialOptions {
    fn default() -> Self {
        Self {
            generator: Generator::Subsampling,
            with_witness: false,
        }
    }
}

/// Generate, match with the k-core oracle, recover and score.
pub fn run_trial(params: &ModelParams, cfg: &RecoveryConfig, seed: u64) -> Result<TrialResult> {
    run_trial_with(params, cfg, seed, TrialOptions::default())
}

pub fn run_trial_with(params: &ModelParams, cfg: &RecoveryConfig, seed: u64, options: TrialOptions) -> Result<TrialResult> {
    let clock = Instant::now();
    let pair = options.generator.sample(params, seed)?;
    let generate = clock.elapsed();

    let clock = Instant::now();
    let matching = Matcher::Oracle(&pair.pi_star).run(&pair.g1, &pair.g2, cfg.k)?;
    let matching_time = clock.elapsed();

    let clock = Instant::now();
    let matched = matching.len();
    let rec = full_recovery_with(&pair.g1, &pair.g2, cfg, seed, matching)?;
    let recovery = clock.elapsed();

    let score = overlap(&rec.labels, &pair.sigma_star)?;
    let witness = if options.with_witness {
        Some(WitnessRecord::compute(&pair, params, seed)?)
    } else {
        None
    };
    Ok(TrialResult {
        outcome: TrialOutcome {
            seed,
            params: *params,
            eps: cfg.eps,
            k: cfg.k,
            matched,
            deficit: params.n - matched,
            expansion: rec.f_bar.len(),
            degenerate: rec.degenerate,
            overlap: score,
            exact: score == 1.0,
            witness,
        },
        timings: Timings {
            generate,
            matching: matching_time,
            recovery,
        },
    })
}

/// Which computation a sweep cell runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pipeline {
    /// Full recovery; success means overlap 1.
    Recovery,
    /// MAP diagnostics; success means the MAP estimate is exact.
    MapWitness,
    /// Oracle k-core matching only; success means every vertex is matched.
    MatchOnly,
}

impl Pipeline {
    pub fn as_str(self) -> &'static str {
        match self {
            Pipeline::Recovery => "recovery",
            Pipeline::MapWitness => "map-witness",
            Pipeline::MatchOnly => "match-only",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "recovery" => Some(Pipeline::Recovery),
            "map-witness" => Some(Pipeline::MapWitness),
            "match-only" => Some(Pipeline::MatchOnly),
            _ => None,
        }
    }
}

/// A grid over `(alpha, beta, s)` at fixed `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub n: usize,
    pub alphas: Vec<f64>,
    pub betas: Vec<f64>,
    pub ss: Vec<f64>,
    pub trials: usize,
    pub seed: u64,
    pub pipelines: Vec<Pipeline>,
    pub k: usize,
    pub generator: Generator,
}

impl SweepSpec {
    pub fn new(n: usize, alphas: Vec<f64>, betas: Vec<f64>, ss: Vec<f64>, trials: usize, seed: u64) -> Self {
        Self {
            n,
            alphas,
            betas,
            ss,
            trials,
            seed,
            pipelines: vec![Pipeline::Recovery],
            k: DEFAULT_K,
            generator: Generator::Subsampling,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.alphas.is_empty() || self.betas.is_empty() || self.ss.is_empty() || self.pipelines.is_empty() {
            return Err(LabError::Config("sweep grid is empty".into()));
        }
        if self.trials == 0 {
            return Err(LabError::Config("trials must be at least 1".into()));
        }
        if self.k == 0 {
            return Err(LabError::Config("k must be at least 1".into()));
        }
        Ok(())
    }

    /// Cells in output order: alpha, then beta, then s, then pipeline.
    pub fn cells(&self) -> Vec<Cell> {
        let mut cells = Vec::new();
        for &alpha in &self.alphas {
            for &beta in &self.betas {
                for &s in &self.ss {
                    for &pipeline in &self.pipelines {
                        let index = cells.len();
                        cells.push(Cell { index, alpha, beta, s, pipeline });
                    }
                }
            }
        }
        cells
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cell {
    pub index: usize,
    pub alpha: f64,
    pub beta: f64,
    pub s: f64,
    pub pipeline: Pipeline,
}

/// Seed of trial `trial` in cell `cell`.
pub fn trial_seed(base: u64, cell: usize, trial: usize) -> u64 {
    derive_seed(base, cell as u64, trial as u64)
}

// What one trial contributes to its cell.
#[derive(Debug, Clone, PartialEq)]
struct Sample {
    success: bool,
    overlap: Option<f64>,
    deficit: Option<usize>,
    expansion: Option<usize>,
    witness: Option<bool>,
}

fn run_cell_trial(spec: &SweepSpec, cell: &Cell, cfg: &RecoveryConfig, seed: u64) -> Result<Sample> {
    let params = ModelParams::new(spec.n, cell.alpha, cell.beta, cell.s)?;
    match cell.pipeline {
        Pipeline::Recovery => {
            let options = TrialOptions {
                generator: spec.generator,
                with_witness: false,
            };
            let out = run_trial_with(&params, cfg, seed, options)?.outcome;
            Ok(Sample {
                success: out.exact,
                overlap: Some(out.overlap),
                deficit: Some(out.deficit),
                expansion: Some(out.expansion),
                witness: None,
            })
        }
        Pipeline::MapWitness => {
            let pair = spec.generator.sample(&params, seed)?;
            let rec = WitnessRecord::compute(&pair, &params, seed)?;
            Ok(Sample {
                success: rec.map_overlap == 1.0,
                overlap: Some(rec.map_overlap),
                deficit: None,
                expansion: None,
                witness: Some(rec.witness),
            })
        }
        Pipeline::MatchOnly => {
            let pair = spec.generator.sample(&params, seed)?;
            let m = Matcher::Oracle(&pair.pi_star).run(&pair.g1, &pair.g2, spec.k)?;
            Ok(Sample {
                success: m.len() == spec.n,
                overlap: None,
                deficit: Some(spec.n - m.len()),
                expansion: None,
                witness: None,
            })
        }
    }
}

/// Aggregate of one sweep cell.
#[derive(Debug, Clone, PartialEq)]
pub struct CellSummary {
    pub cell: Cell,
    pub n: usize,
    pub trials: usize,
    pub success_rate: f64,
    pub mean_overlap: Option<f64>,
    pub mean_deficit: Option<f64>,
    pub mean_expansion: Option<f64>,
    pub witness_rate: Option<f64>,
    pub region: RegionLabel,
    pub eps_fallback: bool,
    /// Trials that returned an error, with the first message.
    pub errors: usize,
    pub first_error: Option<String>,
}

impl CellSummary {
    pub fn status(&self) -> String {
        let mut parts = Vec::new();
        if self.eps_fallback && self.cell.pipeline == Pipeline::Recovery {
            parts.push("eps-fallback".to_string());
        }
        if self.errors > 0 {
            parts.push(format!("errors={}", self.errors));
        }
        if parts.is_empty() {
            "ok".to_string()
        } else {
            parts.join(";")
        }
    }
}

fn mean<I: Iterator<Item = f64>>(values: I) -> Option<f64> {
    let (sum, count) = values.fold((0.0, 0usize), |(s, c), v| (s + v, c + 1));
    (count > 0).then(|| sum / count as f64)
}

/// Runs every trial of every cell. Trials run in parallel; results are
/// gathered in `(cell, trial)` order before aggregation.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<CellSummary>> {
    spec.validate()?;
    let cells = spec.cells();
    let mut configs = Vec::with_capacity(cells.len());
    for cell in &cells {
        let (mut cfg, fallback) = RecoveryConfig::with_default_eps(cell.alpha, cell.beta, cell.s)?;
        cfg.k = spec.k;
        configs.push((cfg, fallback));
    }
    let tasks: Vec<(usize, usize)> = (0..cells.len())
        .flat_map(|c| (0..spec.trials).map(move |t| (c, t)))
        .collect();
    let samples: Vec<std::result::Result<Sample, String>> = tasks
        .par_iter()
        .map(|&(c, t)| {
            let seed = trial_seed(spec.seed, c, t);
            run_cell_trial(spec, &cells[c], &configs[c].0, seed).map_err(|e| e.to_string())
        })
        .collect();

    let mut out = Vec::with_capacity(cells.len());
    for (c, chunk) in samples.chunks(spec.trials).enumerate() {
        let cell = cells[c];
        let ok: Vec<&Sample> = chunk.iter().filter_map(|r| r.as_ref().ok()).collect();
        let errors = chunk.len() - ok.len();
        out.push(CellSummary {
            cell,
            n: spec.n,
            trials: spec.trials,
            success_rate: ok.iter().filter(|s| s.success).count() as f64 / spec.trials as f64,
            mean_overlap: mean(ok.iter().filter_map(|s| s.overlap)),
            mean_deficit: mean(ok.iter().filter_map(|s| s.deficit.map(|d| d as f64))),
            mean_expansion: mean(ok.iter().filter_map(|s| s.expansion.map(|d| d as f64))),
            witness_rate: mean(ok.iter().filter_map(|s| s.witness.map(|w| f64::from(u8::from(w))))),
            region: classify_region(cell.alpha, cell.beta, cell.s, DEFAULT_BOUNDARY_TOL)?,
            eps_fallback: configs[c].1,
            errors,
            first_error: chunk.iter().find_map(|r| r.as_ref().err().cloned()),
        });
    }
    Ok(out)
}

fn opt(x: Option<f64>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

/// Renders summaries as the versioned sweep CSV.
pub fn format_sweep_csv(rows: &[CellSummary]) -> String {
    let mut out = format!("{SWEEP_SCHEMA}\n{SWEEP_COLUMNS}\n");
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{},{},{}",
            r.cell.alpha,
            r.cell.beta,
            r.cell.s,
            r.n,
            r.cell.pipeline.as_str(),
            r.trials,
            r.success_rate,
            opt(r.mean_overlap),
            opt(r.mean_deficit),
            opt(r.mean_expansion),
            opt(r.witness_rate),
            r.region,
            r.status()
        )
        .unwrap();
    }
    out
}

pub fn sweep_csv(spec: &SweepSpec) -> Result<String> {
    Ok(format_sweep_csv(&run_sweep(spec)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trial_is_deterministic() {
        let params = ModelParams::new(300, 30.0, 3.0, 0.9).unwrap();
        let (cfg, _) = RecoveryConfig::with_default_eps(30.0, 3.0, 0.9).unwrap();
        let a = run_trial(&params, &cfg, 5).unwrap();
        let b = run_trial(&params, &cfg, 5).unwrap();
        assert_eq!(a.outcome, b.outcome);
        assert!(a.outcome.expansion >= a.outcome.deficit);
        assert_eq!(a.outcome.exact, a.outcome.overlap == 1.0);
    }

    #[test]
    fn derived_seeds_are_distinct() {
        let mut seen = std::collections::HashSet::new();
        for c in 0..50 {
            for t in 0..50 {
                assert!(seen.insert(trial_seed(11, c, t)));
            }
        }
    }

    #[test]
    fn one_cell_sweep_matches_trials() {
        let mut spec = SweepSpec::new(200, vec![30.0], vec![3.0], vec![1.0], 3, 4);
        spec.pipelines = vec![Pipeline::Recovery];
        let rows = run_sweep(&spec).unwrap();
        assert_eq!(rows.len(), 1);
        let (cfg, _) = RecoveryConfig::with_default_eps(30.0, 3.0, 1.0).unwrap();
        let params = ModelParams::new(200, 30.0, 3.0, 1.0).unwrap();
        let outcomes: Vec<TrialOutcome> = (0..3)
            .map(|t| run_trial(&params, &cfg, trial_seed(4, 0, t)).unwrap().outcome)
            .collect();
        let rate = outcomes.iter().filter(|o| o.exact).count() as f64 / 3.0;
        assert_eq!(rows[0].success_rate, rate);
        let mean_overlap = outcomes.iter().map(|o| o.overlap).sum::<f64>() / 3.0;
        assert!((rows[0].mean_overlap.unwrap() - mean_overlap).abs() < 1e-12);
    }

    #[test]
    fn sweep_records_trial_errors() {
        // Equal rates have no MAP direction, so every witness trial fails.
        let mut spec = SweepSpec::new(100, vec![4.0], vec![4.0], vec![0.5], 2, 1);
        spec.pipelines = vec![Pipeline::MapWitness, Pipeline::MatchOnly];
        let rows = run_sweep(&spec).unwrap();
        assert_eq!(rows[0].errors, 2);
        assert_eq!(rows[0].status(), "errors=2");
        assert_eq!(rows[1].errors, 0);
        let csv = format_sweep_csv(&rows);
        assert!(csv.starts_with(SWEEP_SCHEMA));
        assert_eq!(csv.lines().count(), 4);
    }

    #[test]
    fn empty_grid_is_rejected() {
        let spec = SweepSpec::new(100, vec![], vec![1.0], vec![0.5], 2, 1);
        assert!(run_sweep(&spec).is_err());
    }
}
