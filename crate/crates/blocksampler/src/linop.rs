//! The measurement map of a block dictionary and its adjoint.
//!
//! A weight vector `pi` over the `m` blocks induces the pixel density
//! `(M pi)_i = (1/ell) * sum over blocks k containing pixel i of pi_k`.
//! Because every block has exactly `ell` pixels, `M` sends the simplex over
//! blocks into the simplex over pixels. The adjoint averages a pixel vector
//! over each block: `(M* q)_k = (1/ell) * sum over pixels of block k of q_i`.
//!
//! Both directions are pure gathers over the dictionary's incidence lists,
//! evaluated matrix-free; `build_dense` exists for small-instance inspection
//! and test oracles only.

use crate::dictionary::BlockDictionary;
use crate::error::{Error, Result};

/// Largest `n * m` for which a dense matrix may be materialized.
pub const DENSE_ENTRY_LIMIT: usize = 10_000_000;

fn check_len(what: &str, got: usize, want: usize) -> Result<()> {
    if got != want {
        return Err(Error::input(format!(
            "{what} has length {got}, dictionary expects {want}"
        )));
    }
    Ok(())
}

/// Forward map: block weights to the induced pixel density.
pub fn apply(dict: &BlockDictionary, pi: &[f64]) -> Result<Vec<f64>> {
    check_len("weight vector", pi.len(), dict.num_blocks())?;
    let inv_ell = 1.0 / dict.block_len() as f64;
    let out = (0..dict.num_pixels())
        .map(|i| {
            let mut acc = 0.0;
            for &k in dict.blocks_of_pixel(i) {
                acc += pi[k as usize];
            }
            acc * inv_ell
        })
        .collect();
    Ok(out)
}

/// Adjoint map: averages a pixel vector over every block.
pub fn apply_adjoint(dict: &BlockDictionary, q: &[f64]) -> Result<Vec<f64>> {
    check_len("pixel vector", q.len(), dict.num_pixels())?;
    let inv_ell = 1.0 / dict.block_len() as f64;
    let out = dict
        .blocks_iter()
        .map(|block| {
            let mut acc = 0.0;
            for &p in block {
                acc += q[p as usize];
            }
            acc * inv_ell
        })
        .collect();
    Ok(out)
}

/// Operator norm of the adjoint from `l_p` (pixels) to `l_inf` (blocks).
///
/// Equals `ell^(-1/p)`: the extremal input concentrates on the pixels of a
/// single block. `p = f64::INFINITY` is allowed; `p < 1` is not a norm.
pub fn operator_norm_p_to_inf(dict: &BlockDictionary, p: f64) -> Result<f64> {
    if p.is_nan() || p < 1.0 {
        return Err(Error::input(format!("operator norm needs p >= 1, got {p}")));
    }
    let ell = dict.block_len() as f64;
    let norm = if p == f64::INFINITY {
        1.0
    } else if p == 1.0 {
        1.0 / ell
    } else if p == 2.0 {
        1.0 / ell.sqrt()
    } else {
        ell.powf(-1.0 / p)
    };
    Ok(norm)
}

/// Spectral norm `||M||_2 = ||M*||_2`, estimated by at most `max_iters`
/// power iterations on `M M*` with relative tolerance `tol`.
///
/// `M M*` has nonnegative entries, so the all-ones start vector overlaps the
/// leading eigenvector and the iteration is deterministic.
pub fn operator_norm_2(dict: &BlockDictionary, max_iters: usize, tol: f64) -> f64 {
    let n = dict.num_pixels();
    let mut v = vec![1.0 / (n as f64).sqrt(); n];
    let mut lambda = 0.0f64;
    for _ in 0..max_iters {
        let u = apply_adjoint(dict, &v).expect("dimension fixed by construction");
        let w = apply(dict, &u).expect("dimension fixed by construction");
        let norm = w.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm == 0.0 {
            return 0.0;
        }
        let prev = lambda;
        lambda = norm;
        for (vi, wi) in v.iter_mut().zip(&w) {
            *vi = wi / norm;
        }
        if (lambda - prev).abs() <= tol * lambda {
            break;
        }
    }
    lambda.sqrt()
}

/// Dense `n x m` matrix of the forward map, row-major.
///
/// Guarded: refuses instances above [`DENSE_ENTRY_LIMIT`] entries.
pub fn build_dense(dict: &BlockDictionary) -> Result<Vec<f64>> {
    let n = dict.num_pixels();
    let m = dict.num_blocks();
    if n.saturating_mul(m) > DENSE_ENTRY_LIMIT {
        return Err(Error::unsupported(format!(
            "dense matrix would hold {} entries, limit is {DENSE_ENTRY_LIMIT}",
            n * m
        )));
    }
    let inv_ell = 1.0 / dict.block_len() as f64;
    let mut dense = vec![0.0; n * m];
    for (k, block) in dict.blocks_iter().enumerate() {
        for &p in block {
            dense[p as usize * m + k] = inv_ell;
        }
    }
    Ok(dense)
}
