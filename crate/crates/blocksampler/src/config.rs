//! Run configuration: a single JSON document drives every command.
//!
//! Unknown keys are rejected so typos fail loudly. Every section has
//! defaults, so the empty object `{}` is a valid configuration. Paths inside
//! the file (custom density, benchmark image, output directory) are resolved
//! relative to the directory containing the configuration file.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::densities::{self, CenterMask, TargetDensity};
use crate::dictionary::{build_line_dictionary, build_row_column_dictionary, BlockDictionary};
use crate::error::{Error, Result};
use crate::formats;
use crate::recon::DouglasRachford;
use crate::sampler::SchemeTarget;
use crate::solver::SolverConfig;
use crate::wavelet;

/// Top-level configuration document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    /// Base seed for every stochastic step.
    pub seed: u64,
    /// Directory receiving all command outputs.
    pub output_dir: PathBuf,
    pub dictionary: DictionarySection,
    pub density: DensitySection,
    pub solver: SolverConfig,
    pub sampling: SamplingSection,
    pub reconstruction: ReconstructionSection,
    pub benchmark: BenchmarkSection,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            output_dir: PathBuf::from("out"),
            dictionary: DictionarySection::default(),
            density: DensitySection::default(),
            solver: SolverConfig::default(),
            sampling: SamplingSection::default(),
            reconstruction: ReconstructionSection::default(),
            benchmark: BenchmarkSection::default(),
        }
    }
}

impl RunConfig {
    /// Parse a JSON document without path resolution.
    pub fn from_json(text: &str) -> Result<Self> {
        let config: Self =
            serde_json::from_str(text).map_err(|e| Error::input(format!("bad config: {e}")))?;
        config.validate()?;
        Ok(config)
    }

    /// Load a file, resolving its relative paths against its directory.
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::Format {
            path: path.to_path_buf(),
            msg: e.to_string(),
        })?;
        let mut config: Self = serde_json::from_str(&text).map_err(|e| Error::Format {
            path: path.to_path_buf(),
            msg: e.to_string(),
        })?;
        let base = path.parent().unwrap_or_else(|| Path::new("."));
        config.resolve_paths(base);
        config.validate()?;
        Ok(config)
    }

    fn resolve_paths(&mut self, base: &Path) {
        let resolve = |p: &mut PathBuf| {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        };
        resolve(&mut self.output_dir);
        if let Some(p) = self.density.path.as_mut() {
            resolve(p);
        }
        if let Some(p) = self.benchmark.image.as_mut() {
            resolve(p);
        }
    }

    /// Canonical serialized form, hashed into provenance records.
    pub fn canonical_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serialization cannot fail")
    }

    pub fn validate(&self) -> Result<()> {
        self.dictionary.validate()?;
        self.density.validate()?;
        self.solver.validate()?;
        self.sampling.validate()?;
        self.reconstruction.validate()?;
        self.benchmark.validate()?;
        Ok(())
    }
}

/// Which block dictionary to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DictionaryKind {
    #[serde(rename = "lines")]
    Lines,
    #[serde(rename = "rows-columns")]
    RowsColumns,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct DictionarySection {
    pub kind: DictionaryKind,
    pub n1: usize,
    pub n2: usize,
}

impl Default for DictionarySection {
    fn default() -> Self {
        Self {
            kind: DictionaryKind::Lines,
            n1: 64,
            n2: 64,
        }
    }
}

impl DictionarySection {
    pub fn validate(&self) -> Result<()> {
        if self.n1 == 0 || self.n2 == 0 {
            return Err(Error::input("dictionary dimensions must be positive"));
        }
        Ok(())
    }

    pub fn build(&self) -> Result<BlockDictionary> {
        match self.kind {
            DictionaryKind::Lines => build_line_dictionary(self.n1, self.n2),
            DictionaryKind::RowsColumns => build_row_column_dictionary(self.n1, self.n2),
        }
    }
}

/// Which target pixel density to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DensityChoice {
    Radial,
    Opt,
    Uniform,
    Custom,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct DensitySection {
    pub kind: DensityChoice,
    /// Fraction of the grid covered by the always-acquired center square.
    pub mask_fraction: f64,
    /// Radial decay exponent.
    pub exponent: f64,
    /// Wavelet depth for the coherence-optimal density; grid default if
    /// omitted.
    pub depth: Option<usize>,
    /// Density file for `kind = "custom"`.
    pub path: Option<PathBuf>,
}

impl Default for DensitySection {
    fn default() -> Self {
        Self {
            kind: DensityChoice::Radial,
            mask_fraction: 0.03,
            exponent: 2.0,
            depth: None,
            path: None,
        }
    }
}

impl DensitySection {
    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.mask_fraction) {
            return Err(Error::input(format!(
                "mask_fraction must lie in [0, 1], got {}",
                self.mask_fraction
            )));
        }
        if !(self.exponent > 0.0 && self.exponent.is_finite()) {
            return Err(Error::input(format!(
                "radial exponent must be positive, got {}",
                self.exponent
            )));
        }
        if self.kind == DensityChoice::Custom && self.path.is_none() {
            return Err(Error::input(
                "a custom density needs `density.path`".to_string(),
            ));
        }
        Ok(())
    }

    pub fn mask(&self, n1: usize, n2: usize) -> Result<CenterMask> {
        CenterMask::new(n1, n2, self.mask_fraction)
    }

    fn depth_for(&self, n1: usize, n2: usize) -> usize {
        self.depth
            .unwrap_or_else(|| wavelet::default_depth(n1.min(n2)))
    }

    /// Build (or load) the target density on an `n1 x n2` grid. The optional
    /// message is a renormalization warning from a custom file.
    pub fn build(&self, n1: usize, n2: usize) -> Result<(TargetDensity, Option<String>)> {
        let mask = self.mask(n1, n2)?;
        match self.kind {
            DensityChoice::Radial => Ok((
                densities::target_radial(n1, n2, &mask, self.exponent)?,
                None,
            )),
            DensityChoice::Opt => Ok((
                densities::target_opt(n1, n2, &mask, self.depth_for(n1, n2))?,
                None,
            )),
            DensityChoice::Uniform => Ok((densities::uniform_off_mask(n1, n2, &mask)?, None)),
            DensityChoice::Custom => {
                let path = self.path.as_ref().expect("validated");
                let file = formats::read_vector(path)?;
                if file.rows != n1 || file.cols != n2 {
                    return Err(Error::input(format!(
                        "custom density is {}x{}, dictionary grid is {n1}x{n2}",
                        file.rows, file.cols
                    )));
                }
                let (loaded, warning) = formats::normalize_loaded_density(file.values)?;
                // The mask must be zero in every target; re-zero and
                // renormalize silently (mass removed here is intentional).
                let mut values = loaded.into_values();
                for p in mask.pixels() {
                    values[p] = 0.0;
                }
                let vector =
                    crate::simplex::ProbabilityVector::from_weights(values).map_err(|_| {
                        Error::input("custom density has no mass off the mask".to_string())
                    })?;
                Ok((
                    TargetDensity {
                        vector,
                        kind: densities::DensityKind::Custom,
                        mask,
                    },
                    warning,
                ))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SamplingSection {
    /// Target fraction of acquired pixels.
    pub ratio: Option<f64>,
    /// Alternatively, a fixed number of block draws.
    pub nblocks: Option<usize>,
}

impl Default for SamplingSection {
    fn default() -> Self {
        Self {
            ratio: Some(0.15),
            nblocks: None,
        }
    }
}

impl SamplingSection {
    pub fn validate(&self) -> Result<()> {
        self.target().map(|_| ())
    }

    pub fn target(&self) -> Result<SchemeTarget> {
        match (self.ratio, self.nblocks) {
            (Some(r), None) => Ok(SchemeTarget::PixelRatio(r)),
            (None, Some(b)) => Ok(SchemeTarget::BlockCount(b)),
            (Some(_), Some(_)) => Err(Error::input(
                "set either sampling.ratio or sampling.nblocks, not both".to_string(),
            )),
            (None, None) => Err(Error::input(
                "set sampling.ratio or sampling.nblocks".to_string(),
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ReconstructionSection {
    /// Soft-threshold level of the splitting scheme.
    pub gamma: f64,
    pub iterations: usize,
    /// Wavelet depth; grid default if omitted.
    pub depth: Option<usize>,
}

impl Default for ReconstructionSection {
    fn default() -> Self {
        Self {
            gamma: 1.0,
            iterations: 500,
            depth: None,
        }
    }
}

impl ReconstructionSection {
    pub fn validate(&self) -> Result<()> {
        self.splitting().validate()
    }

    pub fn splitting(&self) -> DouglasRachford {
        DouglasRachford {
            gamma: self.gamma,
            iterations: self.iterations,
        }
    }

    pub fn depth_for(&self, n1: usize, n2: usize) -> usize {
        self.depth
            .unwrap_or_else(|| wavelet::default_depth(n1.min(n2)))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct BenchmarkSection {
    /// Undersampling ratios to sweep.
    pub ratios: Vec<f64>,
    /// Number of independent seeds per (scheme, ratio) cell.
    pub seeds: u64,
    /// Reference image; the built-in head phantom at dictionary size if
    /// omitted. `.pgm` and `.f32` (with sidecar) files are understood.
    pub image: Option<PathBuf>,
}

impl Default for BenchmarkSection {
    fn default() -> Self {
        Self {
            ratios: vec![0.10, 0.15, 0.20],
            seeds: 20,
            image: None,
        }
    }
}

impl BenchmarkSection {
    pub fn validate(&self) -> Result<()> {
        if self.ratios.is_empty() {
            return Err(Error::input(
                "benchmark.ratios must not be empty".to_string(),
            ));
        }
        for &r in &self.ratios {
            if !(r > 0.0 && r <= 1.0) {
                return Err(Error::input(format!(
                    "benchmark ratio must lie in (0, 1], got {r}"
                )));
            }
        }
        if self.seeds == 0 {
            return Err(Error::input(
                "benchmark.seeds must be at least 1".to_string(),
            ));
        }
        Ok(())
    }
}
