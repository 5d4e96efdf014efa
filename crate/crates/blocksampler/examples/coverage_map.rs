//! Empirical pixel coverage of repeated block draws vs. its expectation.
//!
//! Drawing blocks i.i.d. from weights pi hits pixel i with probability
//! (block_len * (M pi))_i per draw, where M is the dictionary's averaging
//! map. This example draws many blocks, tallies per-pixel hit counts, and
//! compares them with the expectation. Run with:
//!
//! ```text
//! cargo run --example coverage_map
//! ```

use blocksampler::densities::{target_radial, CenterMask};
use blocksampler::dictionary::build_line_dictionary;
use blocksampler::formats;
use blocksampler::sampler::{coverage_counts, expected_coverage};
use blocksampler::solver::{solve, SolverConfig};

fn main() -> blocksampler::Result<()> {
    let n = 32;
    let dict = build_line_dictionary(n, n)?;
    let mask = CenterMask::new(n, n, 0.02)?;
    let target = target_radial(n, n, &mask, 2.0)?;

    let config = SolverConfig {
        alpha: 1e-2,
        max_iters: 1500,
        gap_tol: 1e-4,
        ..Default::default()
    };
    let weights = solve(&dict, &target.vector, &config)?.pi;

    let ndraws = 200_000usize;
    let counts = coverage_counts(&dict, &weights, 42, ndraws)?;
    let per_draw = expected_coverage(&dict, &weights)?;

    // Aggregate the relative error over well-covered pixels.
    let mut rel = Vec::new();
    for (i, &c) in counts.iter().enumerate() {
        let expected = per_draw[i] * ndraws as f64;
        if expected >= 50.0 {
            rel.push((c as f64 - expected).abs() / expected);
        }
    }
    rel.sort_by(f64::total_cmp);
    let mean = rel.iter().sum::<f64>() / rel.len() as f64;
    println!(
        "{} draws over {} pixels; {} pixels expect >= 50 hits",
        ndraws,
        n * n,
        rel.len()
    );
    println!(
        "relative deviation from expectation: mean {:.3}%, median {:.3}%, max {:.3}%",
        100.0 * mean,
        100.0 * rel[rel.len() / 2],
        100.0 * rel[rel.len() - 1]
    );

    // Ring averages inherit the radial decay of the target.
    let c = (n as f64 - 1.0) / 2.0;
    let max_r = c.floor() as usize;
    let mut ring = vec![0.0f64; max_r + 1];
    let mut ring_n = vec![0usize; max_r + 1];
    for r in 0..n {
        for col in 0..n {
            let d = ((r as f64 - c).powi(2) + (col as f64 - c).powi(2))
                .sqrt()
                .round() as usize;
            if d <= max_r {
                ring[d] += counts[r * n + col] as f64;
                ring_n[d] += 1;
            }
        }
    }
    println!("mean hits by distance from center:");
    for d in (0..=max_r).step_by(3) {
        if ring_n[d] > 0 {
            println!("  r = {d:2}  {:9.1}", ring[d] / ring_n[d] as f64);
        }
    }

    let dir = std::path::Path::new("examples_out/coverage_map");
    std::fs::create_dir_all(dir)?;
    let counts_f: Vec<f64> = counts.iter().map(|&c| c as f64).collect();
    formats::write_pgm16(&dir.join("coverage.pgm"), n, n, &counts_f)?;
    println!("wrote {}", dir.join("coverage.pgm").display());
    Ok(())
}
