// SPDX-License-Identifier: Apache-2.0

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use csbm_core::matching::{f_statistic, mismatched};
use csbm_core::recovery::{full_recovery, Matcher};
use csbm_core::thresholds::DEFAULT_BOUNDARY_TOL;
use csbm_core::{classify_region, overlap, ModelParams, DEFAULT_K};
use csbm_lab::config::{parse_sweep, RecoverySettings};
use csbm_lab::harness::{sweep_csv, WitnessRecord, WITNESS_COLUMNS};
use csbm_lab::io::{self, Generator, Meta};

#[derive(Parser)]
#[command(name = "csbm", version, about = "Correlated SBM community recovery lab")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum GeneratorArg {
    Subsampling,
    Partition,
}

impl From<GeneratorArg> for Generator {
    fn from(g: GeneratorArg) -> Self {
        match g {
            GeneratorArg::Subsampling => Generator::Subsampling,
            GeneratorArg::Partition => Generator::Partition,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Sample a correlated pair into an instance directory.
    Generate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        beta: f64,
        #[arg(long)]
        s: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "subsampling")]
        generator: GeneratorArg,
        /// Output directory.
        #[arg(long)]
        out: PathBuf,
    },
    /// Compute a k-core matching and write it as `i mu(i)` lines.
    Match {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long, default_value_t = DEFAULT_K)]
        k: usize,
        /// Exhaustive search instead of the true-permutation oracle (n <= 8).
        #[arg(long)]
        exact: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run the full pipeline and write the estimated labeling.
    Recover {
        #[arg(long)]
        instance: PathBuf,
        /// Flat config with alpha, beta, s, eps, k, seed.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Overrides the config and instance seeds.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        exact: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Write the MAP witness record of an instance as CSV.
    MapWitness {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run a parameter sweep and write the aggregate CSV.
    Sweep {
        #[arg(long)]
        spec: PathBuf,
        /// Overrides the spec's base seed.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print the phase-diagram region of a parameter point.
    Classify {
        alpha: f64,
        beta: f64,
        s: f64,
        #[arg(long, default_value_t = DEFAULT_BOUNDARY_TOL)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn load(dir: &Path) -> Result<(csbm_core::CorrelatedPair, Meta)> {
    io::read_instance(dir).with_context(|| format!("reading instance {}", dir.display()))
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Generate { n, alpha, beta, s, seed, generator, out } => {
            let meta = Meta { n, alpha, beta, s, seed, generator: generator.into() };
            let params = ModelParams::new(n, alpha, beta, s)?;
            let pair = meta.generator.sample(&params, seed)?;
            io::write_instance(&out, &pair, &meta)?;
            println!("n={n} edges_g1={} edges_g2={}", pair.g1.edge_count(), pair.g2.edge_count());
        }
        Command::Match { instance, k, exact, out } => {
            let (pair, _) = load(&instance)?;
            let matcher = if exact { Matcher::Exact } else { Matcher::Oracle(&pair.pi_star) };
            let m = matcher.run(&pair.g1, &pair.g2, k)?;
            io::write_text(&out, &io::format_matching(&m))?;
            let f = f_statistic(&m, &pair.g1, &pair.g2, &pair.pi_star)?;
            let wrong = mismatched(&m, &pair.pi_star).len();
            println!("matched={} unmatched={} mismatched={wrong} f={f}", m.len(), pair.n() - m.len());
        }
        Command::Recover { instance, config, seed, exact, out } => {
            let (pair, meta) = load(&instance)?;
            let settings = match &config {
                Some(path) => RecoverySettings::parse(&io::read_text(path)?)
                    .with_context(|| format!("reading {}", path.display()))?,
                None => RecoverySettings::default(),
            };
            let (cfg, fallback) = settings.resolve(&meta)?;
            let seed = seed.or(settings.seed).unwrap_or(meta.seed);
            let matcher = if exact { Matcher::Exact } else { Matcher::Oracle(&pair.pi_star) };
            let rec = full_recovery(&pair.g1, &pair.g2, &cfg, seed, matcher)?;
            io::write_text(&out, &io::format_labeling(&rec.labels))?;
            let score = overlap(&rec.labels, &pair.sigma_star)?;
            println!(
                "overlap={score} exact={} matched={} f_bar={} degenerate={} ties={} eps={}{}",
                score == 1.0,
                rec.matching.len(),
                rec.f_bar.len(),
                rec.degenerate,
                rec.ties,
                cfg.eps,
                if fallback { " eps-fallback" } else { "" }
            );
        }
        Command::MapWitness { instance, out } => {
            let (pair, meta) = load(&instance)?;
            let record = WitnessRecord::compute(&pair, &meta.params()?, meta.seed)?;
            io::write_text(&out, &format!("{WITNESS_COLUMNS}\n{}\n", record.csv_row()))?;
            println!(
                "witness={} s_star={} map_overlap={}",
                record.witness, record.s_star, record.map_overlap
            );
        }
        Command::Sweep { spec, seed, out } => {
            let mut parsed = parse_sweep(&io::read_text(&spec)?).with_context(|| format!("reading {}", spec.display()))?;
            if let Some(seed) = seed {
                parsed.seed = seed;
            }
            let csv = sweep_csv(&parsed)?;
            io::write_text(&out, &csv)?;
            println!("cells={}", csv.lines().count().saturating_sub(2));
        }
        Command::Classify { alpha, beta, s, tol, out } => {
            let region = classify_region(alpha, beta, s, tol)?;
            if let Some(path) = out {
                io::write_text(&path, &format!("{region}\n"))?;
            }
            println!("{region}");
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("csbm: error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
