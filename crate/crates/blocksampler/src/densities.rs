//! Target pixel densities on the centered frequency grid, and center masks.
//!
//! Densities live on the same `n1 x n2` grid as the dictionaries, indexed in
//! centered frequency coordinates: pixel `(r, c)` carries the frequency
//! offset `(r - n1/2, c - n2/2)`, with the zero frequency at the pixel
//! returned by [`crate::fourier::center_pixel`]. A [`CenterMask`] is a small
//! square of low frequencies that is always acquired deterministically, so
//! target densities are zeroed there and the mask pixels are re-added when a
//! scheme is drawn.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fourier::center_pixel;
use crate::simplex::ProbabilityVector;
use crate::wavelet;

/// Centered square of always-acquired low frequencies.
#[derive(Debug, Clone, PartialEq)]
pub struct CenterMask {
    n1: usize,
    n2: usize,
    side: usize,
    requested_fraction: f64,
}

impl CenterMask {
    /// Mask covering roughly `fraction` of the grid: a centered square with
    /// side `round(sqrt(fraction * n))`. `fraction = 0` gives an empty mask.
    pub fn new(n1: usize, n2: usize, fraction: f64) -> Result<Self> {
        if n1 == 0 || n2 == 0 {
            return Err(Error::input("grid dimensions must be positive"));
        }
        if !(0.0..=1.0).contains(&fraction) {
            return Err(Error::input(format!(
                "mask fraction must lie in [0, 1], got {fraction}"
            )));
        }
        let n = (n1 * n2) as f64;
        let side = (fraction * n).sqrt().round() as usize;
        if side > n1.min(n2) {
            return Err(Error::input(format!(
                "mask side {side} exceeds the shorter grid side of {}",
                n1.min(n2)
            )));
        }
        Ok(Self {
            n1,
            n2,
            side,
            requested_fraction: fraction,
        })
    }

    pub fn empty(n1: usize, n2: usize) -> Self {
        Self {
            n1,
            n2,
            side: 0,
            requested_fraction: 0.0,
        }
    }

    pub fn n1(&self) -> usize {
        self.n1
    }

    pub fn n2(&self) -> usize {
        self.n2
    }

    /// Side of the covered square, 0 when empty.
    pub fn side(&self) -> usize {
        self.side
    }

    pub fn is_empty(&self) -> bool {
        self.side == 0
    }

    pub fn requested_fraction(&self) -> f64 {
        self.requested_fraction
    }

    /// Fraction of the grid actually covered, `side^2 / n`.
    pub fn achieved_fraction(&self) -> f64 {
        (self.side * self.side) as f64 / (self.n1 * self.n2) as f64
    }

    fn bounds(&self) -> Option<(std::ops::Range<usize>, std::ops::Range<usize>)> {
        if self.side == 0 {
            return None;
        }
        let (cr, cc) = center_pixel(self.n1, self.n2);
        let r0 = cr - self.side / 2;
        let c0 = cc - self.side / 2;
        Some((r0..r0 + self.side, c0..c0 + self.side))
    }

    pub fn contains(&self, row: usize, col: usize) -> bool {
        match self.bounds() {
            Some((rows, cols)) => rows.contains(&row) && cols.contains(&col),
            None => false,
        }
    }

    pub fn contains_index(&self, pixel: usize) -> bool {
        self.contains(pixel / self.n2, pixel % self.n2)
    }

    /// Row-major indices of the covered pixels, ascending.
    pub fn pixels(&self) -> Vec<usize> {
        match self.bounds() {
            Some((rows, cols)) => {
                let mut out = Vec::with_capacity(self.side * self.side);
                for r in rows {
                    for c in cols.clone() {
                        out.push(r * self.n2 + c);
                    }
                }
                out
            }
            None => Vec::new(),
        }
    }

    pub fn num_pixels(&self) -> usize {
        self.side * self.side
    }
}

/// How a target density was produced.
#[derive(Debug, Clone, PartialEq)]
pub enum DensityKind {
    /// Inverse power of the frequency radius.
    Radial { exponent: f64 },
    /// Transform-coherence weights of the reconstruction basis.
    TransformOpt { depth: usize },
    /// Uniform over the unmasked pixels.
    Uniform,
    /// Loaded from a file.
    Custom,
}

impl DensityKind {
    pub fn label(&self) -> &'static str {
        match self {
            DensityKind::Radial { .. } => "radial",
            DensityKind::TransformOpt { .. } => "opt",
            DensityKind::Uniform => "uniform",
            DensityKind::Custom => "custom",
        }
    }
}

/// A pixel density together with the mask it was zeroed on.
#[derive(Debug, Clone, PartialEq)]
pub struct TargetDensity {
    pub vector: ProbabilityVector,
    pub kind: DensityKind,
    pub mask: CenterMask,
}

impl TargetDensity {
    pub fn n1(&self) -> usize {
        self.mask.n1()
    }

    pub fn n2(&self) -> usize {
        self.mask.n2()
    }
}

fn zero_mask_and_normalize(
    mut weights: Vec<f64>,
    mask: &CenterMask,
    kind: DensityKind,
) -> Result<TargetDensity> {
    for p in mask.pixels() {
        weights[p] = 0.0;
    }
    let vector = ProbabilityVector::from_weights(weights).map_err(|_| {
        Error::input("mask leaves no weight to normalize; shrink the mask".to_string())
    })?;
    Ok(TargetDensity {
        vector,
        kind,
        mask: mask.clone(),
    })
}

/// Radially decaying density: weight `(k1^2 + k2^2)^(-exponent/2)` at
/// frequency offset `(k1, k2)`, zeroed on the mask and normalized.
///
/// The zero-frequency pixel has no finite weight of its own; when it is not
/// masked it receives the largest 4-neighbor weight instead.
pub fn target_radial(
    n1: usize,
    n2: usize,
    mask: &CenterMask,
    exponent: f64,
) -> Result<TargetDensity> {
    if n1 == 0 || n2 == 0 {
        return Err(Error::input("grid dimensions must be positive"));
    }
    if !(exponent > 0.0 && exponent.is_finite()) {
        return Err(Error::input(format!(
            "radial exponent must be positive, got {exponent}"
        )));
    }
    if mask.n1() != n1 || mask.n2() != n2 {
        return Err(Error::input(
            "mask grid does not match density grid".to_string(),
        ));
    }
    let (cr, cc) = center_pixel(n1, n2);
    let weight_at = |r: usize, c: usize| -> f64 {
        let k1 = r as f64 - cr as f64;
        let k2 = c as f64 - cc as f64;
        (k1 * k1 + k2 * k2).powf(-exponent / 2.0)
    };
    let mut weights = vec![0.0; n1 * n2];
    for r in 0..n1 {
        for c in 0..n2 {
            if (r, c) != (cr, cc) {
                weights[r * n2 + c] = weight_at(r, c);
            }
        }
    }
    // 4-neighbor rule for the singular center.
    let mut center = 0.0f64;
    for (nr, nc) in [
        (cr.wrapping_sub(1), cc),
        (cr + 1, cc),
        (cr, cc.wrapping_sub(1)),
        (cr, cc + 1),
    ] {
        if nr < n1 && nc < n2 {
            center = center.max(weight_at(nr, nc));
        }
    }
    weights[cr * n2 + cc] = center;
    zero_mask_and_normalize(weights, mask, DensityKind::Radial { exponent })
}

/// Coherence-driven density: the weight of frequency `i` is the squared
/// sup-norm of the depth-`depth` wavelet transform of that frequency's
/// spatial wave, zeroed on the mask and normalized. Dimensions must be
/// powers of two no smaller than `2^depth`; depth 0 degenerates to the
/// uniform density off the mask.
pub fn target_opt(n1: usize, n2: usize, mask: &CenterMask, depth: usize) -> Result<TargetDensity> {
    if !(n1.is_power_of_two() && n2.is_power_of_two()) {
        return Err(Error::input(format!(
            "coherence density needs power-of-two dimensions, got {n1}x{n2}"
        )));
    }
    if n1 < (1 << depth) || n2 < (1 << depth) {
        return Err(Error::input(format!(
            "depth {depth} too deep for a {n1}x{n2} grid"
        )));
    }
    if mask.n1() != n1 || mask.n2() != n2 {
        return Err(Error::input(
            "mask grid does not match density grid".to_string(),
        ));
    }
    let n = n1 * n2;
    let inv_sqrt_n = 1.0 / (n as f64).sqrt();
    let (cr, cc) = center_pixel(n1, n2);
    let tau = 2.0 * std::f64::consts::PI;
    let mut weights = vec![0.0; n];
    let mut wave = vec![Complex64::new(0.0, 0.0); n];
    let mut row_phase = vec![Complex64::new(0.0, 0.0); n1];
    let mut col_phase = vec![Complex64::new(0.0, 0.0); n2];
    for fr in 0..n1 {
        let k1 = fr as f64 - cr as f64;
        for (r, v) in row_phase.iter_mut().enumerate() {
            let a = tau * k1 * r as f64 / n1 as f64;
            *v = Complex64::new(a.cos(), a.sin());
        }
        for fc in 0..n2 {
            if mask.contains(fr, fc) {
                continue; // zeroed anyway, skip the transform
            }
            let k2 = fc as f64 - cc as f64;
            for (c, v) in col_phase.iter_mut().enumerate() {
                let a = tau * k2 * c as f64 / n2 as f64;
                *v = Complex64::new(a.cos(), a.sin());
            }
            // Spatial wave of this frequency: the inverse unitary DFT of a
            // centered dirac is a separable complex exponential.
            for r in 0..n1 {
                let rp = row_phase[r] * inv_sqrt_n;
                for c in 0..n2 {
                    wave[r * n2 + c] = rp * col_phase[c];
                }
            }
            let atoms = wavelet::dwt2(n1, n2, &wave, depth)?;
            let peak = atoms.iter().map(|z| z.norm_sqr()).fold(0.0, f64::max);
            weights[fr * n2 + fc] = peak;
        }
    }
    zero_mask_and_normalize(weights, mask, DensityKind::TransformOpt { depth })
}

/// Uniform density over the pixels off the mask.
pub fn uniform_off_mask(n1: usize, n2: usize, mask: &CenterMask) -> Result<TargetDensity> {
    if mask.n1() != n1 || mask.n2() != n2 {
        return Err(Error::input(
            "mask grid does not match density grid".to_string(),
        ));
    }
    let weights = vec![1.0; n1 * n2];
    zero_mask_and_normalize(weights, mask, DensityKind::Uniform)
}
