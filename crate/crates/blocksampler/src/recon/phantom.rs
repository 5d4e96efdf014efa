//! Synthetic test images.

use num_complex::Complex64;
use rand::{seq::SliceRandom, Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::wavelet;

/// One ellipse of the head phantom: additive value, semi-axes, center and
/// rotation in the `[-1, 1]^2` frame.
struct Ellipse {
    value: f64,
    a: f64,
    b: f64,
    x0: f64,
    y0: f64,
    phi_degrees: f64,
}

/// The standard contrast-enhanced head phantom table.
const HEAD_PHANTOM: [Ellipse; 10] = [
    Ellipse {
        value: 1.0,
        a: 0.69,
        b: 0.92,
        x0: 0.0,
        y0: 0.0,
        phi_degrees: 0.0,
    },
    Ellipse {
        value: -0.8,
        a: 0.6624,
        b: 0.874,
        x0: 0.0,
        y0: -0.0184,
        phi_degrees: 0.0,
    },
    Ellipse {
        value: -0.2,
        a: 0.11,
        b: 0.31,
        x0: 0.22,
        y0: 0.0,
        phi_degrees: -18.0,
    },
    Ellipse {
        value: -0.2,
        a: 0.16,
        b: 0.41,
        x0: -0.22,
        y0: 0.0,
        phi_degrees: 18.0,
    },
    Ellipse {
        value: 0.1,
        a: 0.21,
        b: 0.25,
        x0: 0.0,
        y0: 0.35,
        phi_degrees: 0.0,
    },
    Ellipse {
        value: 0.1,
        a: 0.046,
        b: 0.046,
        x0: 0.0,
        y0: 0.1,
        phi_degrees: 0.0,
    },
    Ellipse {
        value: 0.1,
        a: 0.046,
        b: 0.046,
        x0: 0.0,
        y0: -0.1,
        phi_degrees: 0.0,
    },
    Ellipse {
        value: 0.1,
        a: 0.046,
        b: 0.023,
        x0: -0.08,
        y0: -0.605,
        phi_degrees: 0.0,
    },
    Ellipse {
        value: 0.1,
        a: 0.023,
        b: 0.023,
        x0: 0.0,
        y0: -0.606,
        phi_degrees: 0.0,
    },
    Ellipse {
        value: 0.1,
        a: 0.023,
        b: 0.046,
        x0: 0.06,
        y0: -0.605,
        phi_degrees: 0.0,
    },
];

/// Piecewise-constant head phantom on an `n1 x n2` grid, values in `[0, 1]`.
pub fn shepp_logan(n1: usize, n2: usize) -> Vec<f64> {
    let mut image = vec![0.0; n1 * n2];
    for r in 0..n1 {
        // Row 0 is the top of the image, y = +1.
        let y = ((n1 - 1) as f64 / 2.0 - r as f64) / (n1 as f64 / 2.0);
        for c in 0..n2 {
            let x = (c as f64 - (n2 - 1) as f64 / 2.0) / (n2 as f64 / 2.0);
            let mut v = 0.0;
            for e in &HEAD_PHANTOM {
                let phi = e.phi_degrees.to_radians();
                let dx = x - e.x0;
                let dy = y - e.y0;
                let u = dx * phi.cos() + dy * phi.sin();
                let w = -dx * phi.sin() + dy * phi.cos();
                if (u / e.a).powi(2) + (w / e.b).powi(2) <= 1.0 {
                    v += e.value;
                }
            }
            image[r * n2 + c] = v.clamp(0.0, 1.0);
        }
    }
    image
}

/// Real image with exactly `nonzeros` nonzero coefficients in its
/// depth-`depth` wavelet expansion, with seeded positions and amplitudes.
pub fn wavelet_sparse_phantom(
    n1: usize,
    n2: usize,
    depth: usize,
    nonzeros: usize,
    seed: u64,
) -> Result<Vec<f64>> {
    let n = n1 * n2;
    if nonzeros == 0 || nonzeros > n {
        return Err(Error::input(format!(
            "nonzero count must lie in 1..={n}, got {nonzeros}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut indices: Vec<usize> = (0..n).collect();
    indices.shuffle(&mut rng);
    let mut coefficients = vec![Complex64::new(0.0, 0.0); n];
    for &i in indices.iter().take(nonzeros) {
        // Amplitudes bounded away from zero so sparsity is unambiguous.
        let amplitude = 0.5 + rng.gen::<f64>();
        let sign = if rng.gen::<bool>() { 1.0 } else { -1.0 };
        coefficients[i] = Complex64::new(sign * amplitude, 0.0);
    }
    let image = wavelet::idwt2(n1, n2, &coefficients, depth)?;
    Ok(image.iter().map(|z| z.re).collect())
}
