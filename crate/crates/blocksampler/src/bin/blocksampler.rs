//! Command-line front end: parses flags, overlays them on the JSON run
//! configuration, and dispatches to the library command implementations.
//! Exit codes: 0 success, 1 validation/input error, 2 numerical failure.

use std::path::PathBuf;

use clap::{Parser, Subcommand};

use blocksampler::commands::{self, CommandReport};
use blocksampler::config::{DensityChoice, DictionaryKind, RunConfig};
use blocksampler::{Error, Result};

#[derive(Parser)]
#[command(
    name = "blocksampler",
    version,
    about = "Design and evaluate block-constrained acquisition schemes",
    propagate_version = true
)]
struct Cli {
    /// JSON configuration file (defaults apply when omitted).
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Where to write artifacts (overrides the configuration).
    #[arg(long, global = true, value_name = "DIR")]
    output_dir: Option<PathBuf>,
    /// Base seed (overrides the configuration).
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the block dictionary and export it as text.
    BuildDict {
        /// Dictionary family: "lines" or "rows-columns".
        #[arg(long)]
        kind: Option<String>,
        #[arg(long)]
        n1: Option<usize>,
        #[arg(long)]
        n2: Option<usize>,
    },
    /// Build the target pixel density and export it as text.
    MakeDensity {
        /// Density kind: "radial", "opt", "uniform", or "custom".
        #[arg(long)]
        kind: Option<String>,
        /// Fraction of the grid in the always-acquired center square.
        #[arg(long)]
        mask_fraction: Option<f64>,
        /// Radial decay exponent.
        #[arg(long)]
        exponent: Option<f64>,
        /// Wavelet depth for the coherence-optimal density.
        #[arg(long)]
        depth: Option<usize>,
        /// Density file for --kind custom.
        #[arg(long, value_name = "PATH")]
        path: Option<PathBuf>,
    },
    /// Fit block weights to the target density with the accelerated dual
    /// scheme; writes weights and the convergence trace.
    Solve {
        /// Entropic regularization weight.
        #[arg(long)]
        alpha: Option<f64>,
        /// Iteration budget.
        #[arg(long)]
        max_iters: Option<usize>,
        /// Stop once the duality gap falls below this value.
        #[arg(long)]
        gap_tol: Option<f64>,
        /// Heuristic Lipschitz divisor (> 1 voids the certificates).
        #[arg(long)]
        divisor: Option<f64>,
        /// Trace stride in iterations.
        #[arg(long)]
        trace_every: Option<usize>,
    },
    /// Draw an acquisition scheme from solved block weights.
    Sample {
        /// Target fraction of acquired pixels.
        #[arg(long, conflicts_with = "nblocks")]
        ratio: Option<f64>,
        /// Fixed number of block draws instead of a ratio.
        #[arg(long)]
        nblocks: Option<usize>,
        /// Weight file (defaults to <output_dir>/weights.txt).
        #[arg(long, value_name = "PATH")]
        weights: Option<PathBuf>,
    },
    /// Estimate per-pixel coverage rates over many draws.
    Coverage {
        /// Number of block draws.
        #[arg(long, default_value_t = 100_000)]
        ndraws: usize,
        /// Weight file (defaults to <output_dir>/weights.txt).
        #[arg(long, value_name = "PATH")]
        weights: Option<PathBuf>,
    },
    /// Reconstruct an image from a scheme's measurements and report PSNR.
    Reconstruct {
        /// Scheme file (defaults to <output_dir>/scheme.txt).
        #[arg(long, value_name = "PATH")]
        scheme: Option<PathBuf>,
        /// Reference image, .pgm or .f32 (defaults to the built-in phantom).
        #[arg(long, value_name = "PATH")]
        image: Option<PathBuf>,
        /// Splitting iterations.
        #[arg(long)]
        iterations: Option<usize>,
        /// Soft-threshold level.
        #[arg(long)]
        gamma: Option<f64>,
        /// Wavelet depth.
        #[arg(long)]
        depth: Option<usize>,
    },
    /// Compare scheme families over ratios and seeds; writes a PSNR table.
    Benchmark {
        /// Comma-separated undersampling ratios, e.g. 0.10,0.15.
        #[arg(long, value_delimiter = ',')]
        ratios: Vec<f64>,
        /// Number of seeds per cell.
        #[arg(long)]
        seeds: Option<u64>,
        /// Worker pool size (BLOCKSAMPLER_THREADS caps it).
        #[arg(long)]
        threads: Option<usize>,
        /// Reference image, .pgm or .f32 (defaults to the built-in phantom).
        #[arg(long, value_name = "PATH")]
        image: Option<PathBuf>,
    },
}

fn parse_dictionary_kind(s: &str) -> Result<DictionaryKind> {
    match s {
        "lines" => Ok(DictionaryKind::Lines),
        "rows-columns" => Ok(DictionaryKind::RowsColumns),
        _ => Err(Error::input(format!(
            "unknown dictionary kind {s:?} (expected \"lines\" or \"rows-columns\")"
        ))),
    }
}

fn parse_density_kind(s: &str) -> Result<DensityChoice> {
    match s {
        "radial" => Ok(DensityChoice::Radial),
        "opt" => Ok(DensityChoice::Opt),
        "uniform" => Ok(DensityChoice::Uniform),
        "custom" => Ok(DensityChoice::Custom),
        _ => Err(Error::input(format!(
            "unknown density kind {s:?} (expected radial, opt, uniform, or custom)"
        ))),
    }
}

fn run(cli: Cli) -> Result<CommandReport> {
    let mut config = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    if let Some(dir) = cli.output_dir {
        config.output_dir = dir;
    }
    if let Some(seed) = cli.seed {
        config.seed = seed;
    }
    match cli.command {
        Command::BuildDict { kind, n1, n2 } => {
            if let Some(k) = kind {
                config.dictionary.kind = parse_dictionary_kind(&k)?;
            }
            if let Some(n1) = n1 {
                config.dictionary.n1 = n1;
            }
            if let Some(n2) = n2 {
                config.dictionary.n2 = n2;
            }
            commands::cmd_build_dict(&config)
        }
        Command::MakeDensity {
            kind,
            mask_fraction,
            exponent,
            depth,
            path,
        } => {
            if let Some(k) = kind {
                config.density.kind = parse_density_kind(&k)?;
            }
            if let Some(f) = mask_fraction {
                config.density.mask_fraction = f;
            }
            if let Some(e) = exponent {
                config.density.exponent = e;
            }
            if depth.is_some() {
                config.density.depth = depth;
            }
            if path.is_some() {
                config.density.path = path;
            }
            commands::cmd_make_density(&config)
        }
        Command::Solve {
            alpha,
            max_iters,
            gap_tol,
            divisor,
            trace_every,
        } => {
            if let Some(a) = alpha {
                config.solver.alpha = a;
            }
            if let Some(k) = max_iters {
                config.solver.max_iters = k;
            }
            if let Some(t) = gap_tol {
                config.solver.gap_tol = t;
            }
            if let Some(d) = divisor {
                config.solver.lipschitz_divisor = d;
            }
            if let Some(s) = trace_every {
                config.solver.trace_every = s;
            }
            commands::cmd_solve(&config)
        }
        Command::Sample {
            ratio,
            nblocks,
            weights,
        } => {
            if let Some(r) = ratio {
                config.sampling.ratio = Some(r);
                config.sampling.nblocks = None;
            }
            if let Some(b) = nblocks {
                config.sampling.ratio = None;
                config.sampling.nblocks = Some(b);
            }
            commands::cmd_sample(&config, weights.as_deref())
        }
        Command::Coverage { ndraws, weights } => {
            commands::cmd_coverage(&config, weights.as_deref(), ndraws)
        }
        Command::Reconstruct {
            scheme,
            image,
            iterations,
            gamma,
            depth,
        } => {
            if let Some(i) = iterations {
                config.reconstruction.iterations = i;
            }
            if let Some(g) = gamma {
                config.reconstruction.gamma = g;
            }
            if depth.is_some() {
                config.reconstruction.depth = depth;
            }
            commands::cmd_reconstruct(&config, scheme.as_deref(), image.as_deref())
        }
        Command::Benchmark {
            ratios,
            seeds,
            threads,
            image,
        } => {
            if !ratios.is_empty() {
                config.benchmark.ratios = ratios;
            }
            if let Some(s) = seeds {
                config.benchmark.seeds = s;
            }
            if image.is_some() {
                config.benchmark.image = image;
            }
            commands::cmd_benchmark(&config, threads)
        }
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version displays are successes; usage mistakes are
            // validation errors (exit 1), matching the library convention.
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    match run(cli) {
        Ok(report) => {
            for note in &report.notes {
                println!("{note}");
            }
            for file in &report.files {
                println!("wrote {}", file.display());
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(e.exit_code());
        }
    }
}
