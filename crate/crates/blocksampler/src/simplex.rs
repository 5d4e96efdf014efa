//! Probability vectors over a finite index set.
//!
//! Everything downstream (block weights, pixel densities, sampling) works
//! with points of the standard simplex, so the validation lives here once.

use crate::error::{Error, Result};

/// Absolute tolerance on the total mass of a [`ProbabilityVector`].
pub const SIMPLEX_SUM_TOL: f64 = 1e-12;

/// Compensated (Kahan) summation. Plain left-to-right accumulation of ~1e5
/// entries can already drift past the 1e-12 simplex tolerance.
pub fn kahan_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0;
    let mut carry = 0.0;
    for v in values {
        let y = v - carry;
        let t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    sum
}

/// A nonnegative vector whose entries sum to one (within [`SIMPLEX_SUM_TOL`]).
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityVector {
    values: Vec<f64>,
}

impl ProbabilityVector {
    /// Wraps `values`, checking nonnegativity and total mass.
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::input("probability vector must be nonempty"));
        }
        for (i, &v) in values.iter().enumerate() {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::input(format!(
                    "probability vector entry {i} is {v}, expected a finite nonnegative value"
                )));
            }
        }
        let sum = kahan_sum(values.iter().copied());
        if (sum - 1.0).abs() > SIMPLEX_SUM_TOL {
            return Err(Error::input(format!(
                "probability vector sums to {sum}, off by more than {SIMPLEX_SUM_TOL}"
            )));
        }
        Ok(Self { values })
    }

    /// Normalizes nonnegative weights to total mass one.
    pub fn from_weights(mut weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::input("weight vector must be nonempty"));
        }
        for (i, &w) in weights.iter().enumerate() {
            if !w.is_finite() || w < 0.0 {
                return Err(Error::input(format!(
                    "weight {i} is {w}, expected a finite nonnegative value"
                )));
            }
        }
        let sum = kahan_sum(weights.iter().copied());
        if sum <= 0.0 {
            return Err(Error::input("weights sum to zero, cannot normalize"));
        }
        for w in weights.iter_mut() {
            *w /= sum;
        }
        // One correction pass: dividing by the computed sum can still leave a
        // residual above the simplex tolerance for long vectors.
        let resid = kahan_sum(weights.iter().copied());
        if resid > 0.0 {
            for w in weights.iter_mut() {
                *w /= resid;
            }
        }
        Ok(Self { values: weights })
    }

    /// Uniform distribution on `dim` outcomes.
    pub fn uniform(dim: usize) -> Self {
        assert!(dim > 0, "uniform distribution needs at least one outcome");
        Self {
            values: vec![1.0 / dim as f64; dim],
        }
    }

    /// Point mass at `index`.
    pub fn dirac(dim: usize, index: usize) -> Self {
        assert!(index < dim, "dirac index {index} out of range {dim}");
        let mut values = vec![0.0; dim];
        values[index] = 1.0;
        Self { values }
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }
}

impl AsRef<[f64]> for ProbabilityVector {
    fn as_ref(&self) -> &[f64] {
        &self.values
    }
}

impl std::ops::Index<usize> for ProbabilityVector {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.values[i]
    }
}
