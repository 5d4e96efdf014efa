//! Orthonormal 2D Haar transform in the standard multiresolution layout.
//!
//! Each level runs the paired average/difference step over rows then columns
//! of the current low-pass block and recurses on the top-left quarter only,
//! so a depth-`d` transform of an `n1 x n2` image keeps the coarse
//! approximation in the leading `(n1/2^d) x (n2/2^d)` corner. With the `1/
//! sqrt(2)` scaling the transform is orthonormal: round trips are exact to
//! rounding and energy is preserved.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Scalars the transform can process: closed under addition, subtraction and
/// scaling by `f64`.
pub trait WaveletScalar:
    Copy
    + std::ops::Add<Output = Self>
    + std::ops::Sub<Output = Self>
    + std::ops::Mul<f64, Output = Self>
{
    fn zero() -> Self;
}

impl WaveletScalar for f64 {
    fn zero() -> Self {
        0.0
    }
}

impl WaveletScalar for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
}

fn check_dims(n1: usize, n2: usize, len: usize, depth: usize) -> Result<()> {
    if n1 == 0 || n2 == 0 || len != n1 * n2 {
        return Err(Error::input(format!(
            "image of {len} samples does not match {n1}x{n2}"
        )));
    }
    let factor = 1usize
        .checked_shl(depth as u32)
        .ok_or_else(|| Error::input(format!("depth {depth} too large")))?;
    if !n1.is_multiple_of(factor) || !n2.is_multiple_of(factor) {
        return Err(Error::input(format!(
            "dimensions {n1}x{n2} not divisible by 2^{depth}"
        )));
    }
    Ok(())
}

const INV_SQRT2: f64 = std::f64::consts::FRAC_1_SQRT_2;

/// One forward step on `row[0..w]`: averages left, differences right.
fn step_forward<T: WaveletScalar>(row: &mut [T], w: usize, scratch: &mut Vec<T>) {
    let half = w / 2;
    scratch.clear();
    scratch.extend_from_slice(&row[..w]);
    for l in 0..half {
        let a = scratch[2 * l];
        let b = scratch[2 * l + 1];
        row[l] = (a + b) * INV_SQRT2;
        row[half + l] = (a - b) * INV_SQRT2;
    }
}

/// One inverse step on `row[0..w]`.
fn step_inverse<T: WaveletScalar>(row: &mut [T], w: usize, scratch: &mut Vec<T>) {
    let half = w / 2;
    scratch.clear();
    scratch.extend_from_slice(&row[..w]);
    for l in 0..half {
        let a = scratch[l];
        let d = scratch[half + l];
        row[2 * l] = (a + d) * INV_SQRT2;
        row[2 * l + 1] = (a - d) * INV_SQRT2;
    }
}

fn transform<T: WaveletScalar>(n1: usize, n2: usize, data: &mut [T], depth: usize, forward: bool) {
    let mut scratch: Vec<T> = Vec::new();
    let mut col: Vec<T> = Vec::new();
    // Active low-pass block sizes per level, finest first.
    let levels: Vec<(usize, usize)> = (0..depth).map(|d| (n1 >> d, n2 >> d)).collect();
    let order: Box<dyn Iterator<Item = &(usize, usize)>> = if forward {
        Box::new(levels.iter())
    } else {
        Box::new(levels.iter().rev())
    };
    for &(h, w) in order {
        if forward {
            for r in 0..h {
                step_forward(&mut data[r * n2..r * n2 + w], w, &mut scratch);
            }
            for c in 0..w {
                col.clear();
                col.extend((0..h).map(|r| data[r * n2 + c]));
                step_forward(&mut col, h, &mut scratch);
                for r in 0..h {
                    data[r * n2 + c] = col[r];
                }
            }
        } else {
            for c in 0..w {
                col.clear();
                col.extend((0..h).map(|r| data[r * n2 + c]));
                step_inverse(&mut col, h, &mut scratch);
                for r in 0..h {
                    data[r * n2 + c] = col[r];
                }
            }
            for r in 0..h {
                step_inverse(&mut data[r * n2..r * n2 + w], w, &mut scratch);
            }
        }
    }
}

/// Forward transform; `depth = 0` is the identity.
pub fn dwt2<T: WaveletScalar>(n1: usize, n2: usize, data: &[T], depth: usize) -> Result<Vec<T>> {
    check_dims(n1, n2, data.len(), depth)?;
    let mut out = data.to_vec();
    transform(n1, n2, &mut out, depth, true);
    Ok(out)
}

/// Inverse transform, exact inverse of [`dwt2`] at equal depth.
pub fn idwt2<T: WaveletScalar>(n1: usize, n2: usize, data: &[T], depth: usize) -> Result<Vec<T>> {
    check_dims(n1, n2, data.len(), depth)?;
    let mut out = data.to_vec();
    transform(n1, n2, &mut out, depth, false);
    Ok(out)
}

/// Default decomposition depth for an `n x n` grid: `log2(n) - 3`, floored at
/// zero, so the coarse block never shrinks below 8x8.
pub fn default_depth(n: usize) -> usize {
    let log = usize::BITS - n.leading_zeros() - 1;
    (log as usize).saturating_sub(3)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn two_by_two_matches_hand_computation() {
        let (a, b, c, d) = (1.0, 2.0, 3.0, 5.0);
        let coeffs = dwt2(2, 2, &[a, b, c, d], 1).unwrap();
        let expected = [
            (a + b + c + d) / 2.0,
            (a - b + c - d) / 2.0,
            (a + b - c - d) / 2.0,
            (a - b - c + d) / 2.0,
        ];
        for (got, want) in coeffs.iter().zip(expected) {
            assert!((got - want).abs() < 1e-15, "{got} vs {want}");
        }
    }

    #[test]
    fn round_trip_is_exact_to_rounding() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for (n1, n2, depth) in [(8, 8, 3), (16, 8, 3), (12, 20, 2), (32, 32, 0)] {
            let img: Vec<f64> = (0..n1 * n2).map(|_| rng.gen::<f64>() - 0.5).collect();
            let coeffs = dwt2(n1, n2, &img, depth).unwrap();
            let back = idwt2(n1, n2, &coeffs, depth).unwrap();
            for (x, y) in img.iter().zip(&back) {
                assert!((x - y).abs() <= 1e-12, "{n1}x{n2} depth {depth}");
            }
        }
    }

    #[test]
    fn transform_preserves_energy() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let img: Vec<f64> = (0..64 * 64).map(|_| rng.gen::<f64>() - 0.5).collect();
        let coeffs = dwt2(64, 64, &img, 4).unwrap();
        let e_img: f64 = img.iter().map(|x| x * x).sum();
        let e_coe: f64 = coeffs.iter().map(|x| x * x).sum();
        assert!((e_img - e_coe).abs() <= 1e-12 * e_img.max(1.0));
    }

    #[test]
    fn constant_image_concentrates_in_the_coarse_corner() {
        let c = 0.75;
        let coeffs = dwt2(8, 8, &vec![c; 64], 2).unwrap();
        for r in 0..8 {
            for col in 0..8 {
                let v = coeffs[r * 8 + col];
                if r < 2 && col < 2 {
                    assert!((v - 4.0 * c).abs() < 1e-14, "coarse ({r},{col})");
                } else {
                    assert!(
                        v.abs() < 1e-14,
                        "detail ({r},{col}) of a constant image is {v}"
                    );
                }
            }
        }
    }

    #[test]
    fn complex_inputs_transform_componentwise() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let re: Vec<f64> = (0..256).map(|_| rng.gen::<f64>()).collect();
        let im: Vec<f64> = (0..256).map(|_| rng.gen::<f64>()).collect();
        let z: Vec<Complex64> = re
            .iter()
            .zip(&im)
            .map(|(&r, &i)| Complex64::new(r, i))
            .collect();
        let zt = dwt2(16, 16, &z, 2).unwrap();
        let rt = dwt2(16, 16, &re, 2).unwrap();
        let it = dwt2(16, 16, &im, 2).unwrap();
        for ((z, r), i) in zt.iter().zip(&rt).zip(&it) {
            assert!((z.re - r).abs() <= 1e-13 && (z.im - i).abs() <= 1e-13);
        }
    }

    #[test]
    fn rejects_indivisible_dimensions() {
        assert!(dwt2(6, 6, &vec![0.0; 36], 2).is_err());
        assert!(dwt2(8, 8, &vec![0.0; 60], 1).is_err());
    }

    #[test]
    fn default_depth_keeps_an_8x8_core() {
        assert_eq!(default_depth(64), 3);
        assert_eq!(default_depth(128), 4);
        assert_eq!(default_depth(8), 0);
        assert_eq!(default_depth(4), 0);
    }
}
