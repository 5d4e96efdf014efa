//! Library implementations of the command-line subcommands.
//!
//! Each function takes the run configuration (plus per-command inputs),
//! writes its artifacts into `config.output_dir`, and returns the written
//! paths together with human-readable notes. All outputs are deterministic
//! for a fixed configuration and seed except the `seconds` column of the
//! solver trace. Every invocation also (re)writes
//! `<output_dir>/provenance.json` recording the configuration hash and seed.

use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use crate::config::RunConfig;
use crate::dictionary::BlockDictionary;
use crate::error::{Error, Result};
use crate::formats::{self, Provenance, PsnrRow};
use crate::recon::{self, phantom, SenseOperator};
use crate::sampler::{self, RadialKind, SchemeTarget};
use crate::simplex::ProbabilityVector;
use crate::solver;

/// What a command produced.
#[derive(Debug, Clone, Default)]
pub struct CommandReport {
    /// Files written, in creation order.
    pub files: Vec<PathBuf>,
    /// Summary lines and warnings for the caller to display.
    pub notes: Vec<String>,
}

impl CommandReport {
    fn file(&mut self, path: PathBuf) -> &mut Self {
        self.files.push(path);
        self
    }

    fn note(&mut self, note: impl Into<String>) -> &mut Self {
        self.notes.push(note.into());
        self
    }
}

fn prepare_output(config: &RunConfig) -> Result<CommandReport> {
    fs::create_dir_all(&config.output_dir)?;
    let provenance = Provenance::new(&config.canonical_json(), config.seed);
    let path = config.output_dir.join("provenance.json");
    formats::write_provenance(&path, &provenance)?;
    let mut report = CommandReport::default();
    report.file(path);
    Ok(report)
}

/// `build-dict`: write the configured block dictionary.
pub fn cmd_build_dict(config: &RunConfig) -> Result<CommandReport> {
    config.validate()?;
    let mut report = prepare_output(config)?;
    let dict = config.dictionary.build()?;
    let path = config.output_dir.join("dictionary.txt");
    formats::write_dictionary(&path, &dict)?;
    report.file(path);
    report.note(format!(
        "dictionary: {} blocks of {} pixels on a {}x{} grid",
        dict.num_blocks(),
        dict.block_len(),
        dict.n1(),
        dict.n2()
    ));
    Ok(report)
}

/// `make-density`: write the configured target pixel density.
pub fn cmd_make_density(config: &RunConfig) -> Result<CommandReport> {
    config.validate()?;
    let mut report = prepare_output(config)?;
    let (n1, n2) = (config.dictionary.n1, config.dictionary.n2);
    let (density, warning) = config.density.build(n1, n2)?;
    if let Some(w) = warning {
        report.note(w);
    }
    let path = config.output_dir.join("density.txt");
    formats::write_vector(&path, n1, n2, density.vector.values())?;
    report.file(path);
    report.note(format!(
        "density: kind {}, mask side {} ({} pixels always acquired)",
        density.kind.label(),
        density.mask.side(),
        density.mask.num_pixels()
    ));
    Ok(report)
}

/// `solve`: fit block weights to the target density; write weights + trace.
pub fn cmd_solve(config: &RunConfig) -> Result<CommandReport> {
    config.validate()?;
    let mut report = prepare_output(config)?;
    let dict = config.dictionary.build()?;
    let (density, warning) = config.density.build(dict.n1(), dict.n2())?;
    if let Some(w) = warning {
        report.note(w);
    }
    let result = solver::solve(&dict, &density.vector, &config.solver)?;
    let weights_path = config.output_dir.join("weights.txt");
    formats::write_vector(&weights_path, 1, dict.num_blocks(), result.pi.values())?;
    report.file(weights_path);
    let trace_path = config.output_dir.join("trace.csv");
    formats::write_trace_csv(&trace_path, &result.trace)?;
    report.file(trace_path);
    let last = result
        .trace
        .rows
        .last()
        .expect("solver always records at least one row");
    report.note(format!(
        "solve: {} iterations, best dual value at iteration {}, final gap {:.3e}, Lipschitz constant {:.6}",
        result.iterations, result.best_iter, last.gap, result.lipschitz
    ));
    Ok(report)
}

fn default_artifact(config: &RunConfig, name: &str, given: Option<&Path>) -> PathBuf {
    given
        .map(Path::to_path_buf)
        .unwrap_or_else(|| config.output_dir.join(name))
}

fn load_weights(
    config: &RunConfig,
    dict: &BlockDictionary,
    weights_path: Option<&Path>,
) -> Result<(ProbabilityVector, Option<String>)> {
    let path = default_artifact(config, "weights.txt", weights_path);
    let file = formats::read_vector(&path)?;
    if file.rows * file.cols != dict.num_blocks() {
        return Err(Error::input(format!(
            "weight file {} holds {} entries, dictionary has {} blocks",
            path.display(),
            file.rows * file.cols,
            dict.num_blocks()
        )));
    }
    formats::normalize_loaded_density(file.values)
}

/// `sample`: draw a scheme from solved weights; write scheme + mask raster.
pub fn cmd_sample(config: &RunConfig, weights_path: Option<&Path>) -> Result<CommandReport> {
    config.validate()?;
    let mut report = prepare_output(config)?;
    let dict = config.dictionary.build()?;
    let (weights, warning) = load_weights(config, &dict, weights_path)?;
    if let Some(w) = warning {
        report.note(w);
    }
    let mask = config.density.mask(dict.n1(), dict.n2())?;
    let scheme = sampler::draw_scheme(
        &dict,
        &weights,
        &mask,
        config.seed,
        config.sampling.target()?,
    )?;
    let scheme_path = config.output_dir.join("scheme.txt");
    formats::write_scheme(&scheme_path, &scheme)?;
    report.file(scheme_path);
    let mask_path = config.output_dir.join("scheme_mask.pgm");
    formats::write_pgm8(
        &mask_path,
        scheme.n1(),
        scheme.n2(),
        &scheme.to_mask_image(),
    )?;
    report.file(mask_path);
    report.note(format!(
        "scheme: {} draws -> {} distinct pixels (ratio {:.4})",
        scheme.num_draws(),
        scheme.num_pixels(),
        scheme.achieved_ratio()
    ));
    Ok(report)
}

/// `coverage`: empirical hit counts over many draws; write count map + CSV.
pub fn cmd_coverage(
    config: &RunConfig,
    weights_path: Option<&Path>,
    ndraws: usize,
) -> Result<CommandReport> {
    config.validate()?;
    if ndraws == 0 {
        return Err(Error::input("coverage needs at least one draw"));
    }
    let mut report = prepare_output(config)?;
    let dict = config.dictionary.build()?;
    let (weights, warning) = load_weights(config, &dict, weights_path)?;
    if let Some(w) = warning {
        report.note(w);
    }
    let counts = sampler::coverage_counts(&dict, &weights, config.seed, ndraws)?;
    let probabilities = sampler::expected_coverage(&dict, &weights)?;
    let csv_path = config.output_dir.join("coverage.csv");
    {
        use std::io::Write as _;
        let mut out = std::io::BufWriter::new(fs::File::create(&csv_path)?);
        writeln!(out, "row,col,count,expected")?;
        for (i, (&count, &prob)) in counts.iter().zip(&probabilities).enumerate() {
            writeln!(
                out,
                "{},{},{},{}",
                i / dict.n2(),
                i % dict.n2(),
                count,
                prob * ndraws as f64
            )?;
        }
        out.flush()?;
    }
    report.file(csv_path);
    let map_path = config.output_dir.join("coverage.pgm");
    let as_f64: Vec<f64> = counts.iter().map(|&c| c as f64).collect();
    formats::write_pgm16(&map_path, dict.n1(), dict.n2(), &as_f64)?;
    report.file(map_path);
    let peak = counts.iter().copied().max().unwrap_or(0);
    report.note(format!("coverage: {ndraws} draws, peak pixel count {peak}"));
    Ok(report)
}

fn load_image(path: Option<&Path>, n1: usize, n2: usize) -> Result<(Vec<f64>, String)> {
    let Some(path) = path else {
        return Ok((phantom::shepp_logan(n1, n2), "phantom".to_string()));
    };
    let label = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "image".to_string());
    let (h, w, data) = match path.extension().and_then(|e| e.to_str()) {
        Some("pgm") => formats::read_pgm(path)?,
        Some("f32") => formats::read_f32_raw(path)?,
        _ => {
            return Err(Error::input(format!(
                "unsupported image format: {} (use .pgm or .f32)",
                path.display()
            )))
        }
    };
    if (h, w) != (n1, n2) {
        return Err(Error::input(format!(
            "image {} is {h}x{w}, expected {n1}x{n2}",
            path.display()
        )));
    }
    Ok((data, label))
}

/// `reconstruct`: sense a reference image through a scheme, reconstruct,
/// and score; write the image (raw + PGM) and a one-row PSNR table.
pub fn cmd_reconstruct(
    config: &RunConfig,
    scheme_path: Option<&Path>,
    image_path: Option<&Path>,
) -> Result<CommandReport> {
    config.validate()?;
    let mut report = prepare_output(config)?;
    let scheme = formats::read_scheme(&default_artifact(config, "scheme.txt", scheme_path))?;
    let (reference, label) = load_image(image_path, scheme.n1(), scheme.n2())?;
    let depth = config.reconstruction.depth_for(scheme.n1(), scheme.n2());
    let result = recon::reconstruct_image(
        &reference,
        &scheme,
        depth,
        &config.reconstruction.splitting(),
    )?;
    let value = recon::psnr(&reference, &result.image)?;
    let raw_path = config.output_dir.join("reconstruction.f32");
    formats::write_f32_raw(&raw_path, scheme.n1(), scheme.n2(), &result.image)?;
    report.file(raw_path.clone());
    report.file(PathBuf::from(format!("{}.json", raw_path.display())));
    let pgm_path = config.output_dir.join("reconstruction.pgm");
    formats::write_pgm16(&pgm_path, scheme.n1(), scheme.n2(), &result.image)?;
    report.file(pgm_path);
    let psnr_path = config.output_dir.join("psnr.csv");
    formats::write_psnr_csv(
        &psnr_path,
        &[PsnrRow {
            scheme: label,
            ratio: scheme.achieved_ratio(),
            seed: scheme.seed(),
            psnr: value,
        }],
    )?;
    report.file(psnr_path);
    report.note(format!(
        "reconstruction: PSNR {value:.2} dB at ratio {:.4} (measurement residual {:.2e})",
        scheme.achieved_ratio(),
        result.residual
    ));
    Ok(report)
}

/// Scheme families compared by the benchmark.
const BENCHMARK_KINDS: [&str; 3] = ["block", "radial-random", "radial-golden"];

/// Worker-pool size: the requested count (or all cores), capped by the
/// `BLOCKSAMPLER_THREADS` environment variable.
pub fn effective_threads(requested: Option<usize>) -> usize {
    let mut threads = requested.unwrap_or_else(|| {
        std::thread::available_parallelism()
            .map(|n| n.get())
            .unwrap_or(1)
    });
    if let Ok(cap) = std::env::var("BLOCKSAMPLER_THREADS") {
        if let Ok(cap) = cap.parse::<usize>() {
            if cap >= 1 {
                threads = threads.min(cap);
            }
        }
    }
    threads.max(1)
}

/// `benchmark`: solve once, then fan PSNR jobs over
/// (scheme kind) x (ratio) x (seed); write the full table.
pub fn cmd_benchmark(config: &RunConfig, threads: Option<usize>) -> Result<CommandReport> {
    config.validate()?;
    let mut report = prepare_output(config)?;
    let dict = config.dictionary.build()?;
    let (n1, n2) = (dict.n1(), dict.n2());
    let (density, warning) = config.density.build(n1, n2)?;
    if let Some(w) = warning {
        report.note(w);
    }
    let solved = solver::solve(&dict, &density.vector, &config.solver)?;
    report.note(format!(
        "benchmark: weights solved in {} iterations (final gap {:.3e})",
        solved.iterations,
        solved.trace.rows.last().expect("nonempty trace").gap
    ));
    let (reference, _) = load_image(config.benchmark.image.as_deref(), n1, n2)?;
    let depth = config.reconstruction.depth_for(n1, n2);
    let splitting = config.reconstruction.splitting();
    let mask = &density.mask;

    struct Job {
        kind: &'static str,
        ratio: f64,
        seed: u64,
    }
    let mut jobs = Vec::new();
    for &ratio in &config.benchmark.ratios {
        for s in 0..config.benchmark.seeds {
            for kind in BENCHMARK_KINDS {
                jobs.push(Job {
                    kind,
                    ratio,
                    seed: config.seed + s,
                });
            }
        }
    }

    let run_job = |job: &Job| -> Result<PsnrRow> {
        let scheme = match job.kind {
            "block" => sampler::draw_scheme(
                &dict,
                &solved.pi,
                mask,
                job.seed,
                SchemeTarget::PixelRatio(job.ratio),
            )?,
            "radial-random" => sampler::radial_scheme_for_ratio(
                n1,
                n2,
                job.ratio,
                RadialKind::UniformRandom,
                job.seed,
                mask,
            )?,
            "radial-golden" => sampler::radial_scheme_for_ratio(
                n1,
                n2,
                job.ratio,
                RadialKind::GoldenAngle,
                job.seed,
                mask,
            )?,
            other => unreachable!("unknown benchmark kind {other}"),
        };
        let operator = SenseOperator::new(&scheme, depth)?;
        let measurements = recon::sense(&reference, &scheme)?;
        let result = recon::douglas_rachford_l1(&operator, &measurements, &splitting)?;
        Ok(PsnrRow {
            scheme: job.kind.to_string(),
            ratio: job.ratio,
            seed: job.seed,
            psnr: recon::psnr(&reference, &result.image)?,
        })
    };

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(effective_threads(threads))
        .build()
        .map_err(|e| Error::input(format!("cannot build worker pool: {e}")))?;
    let rows: Vec<PsnrRow> =
        pool.install(|| jobs.par_iter().map(run_job).collect::<Result<Vec<_>>>())?;

    let table_path = config.output_dir.join("benchmark.csv");
    formats::write_psnr_csv(&table_path, &rows)?;
    report.file(table_path);
    for &ratio in &config.benchmark.ratios {
        for kind in BENCHMARK_KINDS {
            let values: Vec<f64> = rows
                .iter()
                .filter(|r| r.scheme == kind && r.ratio == ratio)
                .map(|r| r.psnr)
                .collect();
            let mean = values.iter().sum::<f64>() / values.len() as f64;
            report.note(format!(
                "benchmark: {kind} at ratio {ratio}: mean PSNR {mean:.2} dB over {} seeds",
                values.len()
            ));
        }
    }
    Ok(report)
}
