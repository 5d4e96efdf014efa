//! Design of block-constrained sampling schemes on a pixel grid.
//!
//! The pipeline has five stages, each usable on its own:
//!
//! 1. [`dictionary`] builds a family of equal-size pixel blocks (discrete
//!    lines, or rows and columns).
//! 2. [`linop`] exposes the induced measurement map from block weights to
//!    pixel densities, matrix-free.
//! 3. [`densities`] builds target pixel densities (radial decay, or driven by
//!    the transform coherence of the reconstruction basis) and low-frequency
//!    center masks.
//! 4. [`solver`] fits block weights to a target density by minimizing a
//!    total-variation distance plus an entropic penalty, through a smoothed
//!    dual ascent with configurable metric geometry.
//! 5. [`sampler`] draws reproducible sampling schemes from the fitted
//!    weights, and [`recon`] scores them by l1-regularized reconstruction.
//!
//! The `examples/` directory contains one runnable program per stage; the
//! `blocksampler` binary chains them behind a JSON-configured CLI.

pub mod commands;
pub mod config;
pub mod densities;
pub mod dictionary;
pub mod error;
pub mod formats;
pub mod fourier;
pub mod linop;
pub mod prox;
pub mod recon;
pub mod sampler;
pub mod simplex;
pub mod solver;
pub mod wavelet;

pub use error::{Error, Result};
pub use simplex::ProbabilityVector;
