//! Centered orthonormal 2D discrete Fourier transform.
//!
//! `forward` computes the unitary DFT scaled by `1/sqrt(n)` and rolls the
//! spectrum so that frequency zero sits at pixel `(n1/2, n2/2)`, matching the
//! frequency indexing used by the density builders and the sampling masks.
//! `inverse` is its exact adjoint (and inverse). Plans are cached per
//! instance, so reusing one [`CenteredDft`] across many transforms is cheap.

use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::error::{Error, Result};

pub struct CenteredDft {
    n1: usize,
    n2: usize,
    row_fwd: Arc<dyn Fft<f64>>,
    row_inv: Arc<dyn Fft<f64>>,
    col_fwd: Arc<dyn Fft<f64>>,
    col_inv: Arc<dyn Fft<f64>>,
}

impl CenteredDft {
    pub fn new(n1: usize, n2: usize) -> Self {
        assert!(n1 > 0 && n2 > 0, "grid dimensions must be positive");
        let mut planner = FftPlanner::new();
        Self {
            n1,
            n2,
            row_fwd: planner.plan_fft_forward(n2),
            row_inv: planner.plan_fft_inverse(n2),
            col_fwd: planner.plan_fft_forward(n1),
            col_inv: planner.plan_fft_inverse(n1),
        }
    }

    pub fn n1(&self) -> usize {
        self.n1
    }

    pub fn n2(&self) -> usize {
        self.n2
    }

    fn check(&self, len: usize) -> Result<()> {
        if len != self.n1 * self.n2 {
            return Err(Error::input(format!(
                "image of {len} samples does not match {}x{}",
                self.n1, self.n2
            )));
        }
        Ok(())
    }

    fn transform_axes(&self, data: &mut [Complex64], forward: bool) {
        let (row_plan, col_plan) = if forward {
            (&self.row_fwd, &self.col_fwd)
        } else {
            (&self.row_inv, &self.col_inv)
        };
        for row in data.chunks_exact_mut(self.n2) {
            row_plan.process(row);
        }
        let mut col = vec![Complex64::new(0.0, 0.0); self.n1];
        for c in 0..self.n2 {
            for r in 0..self.n1 {
                col[r] = data[r * self.n2 + c];
            }
            col_plan.process(&mut col);
            for r in 0..self.n1 {
                data[r * self.n2 + c] = col[r];
            }
        }
    }

    /// Unitary DFT with the zero frequency rolled to the center pixel.
    pub fn forward(&self, image: &[Complex64]) -> Result<Vec<Complex64>> {
        self.check(image.len())?;
        let mut buf = image.to_vec();
        self.transform_axes(&mut buf, true);
        let scale = 1.0 / ((self.n1 * self.n2) as f64).sqrt();
        let mut out = vec![Complex64::new(0.0, 0.0); buf.len()];
        for r in 0..self.n1 {
            // fftshift: centered index r holds unshifted index r - n1/2.
            let sr = (r + self.n1 - self.n1 / 2) % self.n1;
            for c in 0..self.n2 {
                let sc = (c + self.n2 - self.n2 / 2) % self.n2;
                out[r * self.n2 + c] = buf[sr * self.n2 + sc] * scale;
            }
        }
        Ok(out)
    }

    /// Inverse of [`forward`]; also its adjoint, since the map is unitary.
    pub fn inverse(&self, spectrum: &[Complex64]) -> Result<Vec<Complex64>> {
        self.check(spectrum.len())?;
        let mut buf = vec![Complex64::new(0.0, 0.0); spectrum.len()];
        for r in 0..self.n1 {
            let sr = (r + self.n1 - self.n1 / 2) % self.n1;
            for c in 0..self.n2 {
                let sc = (c + self.n2 - self.n2 / 2) % self.n2;
                buf[sr * self.n2 + sc] = spectrum[r * self.n2 + c];
            }
        }
        self.transform_axes(&mut buf, false);
        let scale = 1.0 / ((self.n1 * self.n2) as f64).sqrt();
        for v in buf.iter_mut() {
            *v *= scale;
        }
        Ok(buf)
    }

    pub fn forward_real(&self, image: &[f64]) -> Result<Vec<Complex64>> {
        self.check(image.len())?;
        let as_complex: Vec<Complex64> = image.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        self.forward(&as_complex)
    }
}

/// Row-major index of the zero-frequency pixel in centered coordinates.
pub fn center_pixel(n1: usize, n2: usize) -> (usize, usize) {
    (n1 / 2, n2 / 2)
}
