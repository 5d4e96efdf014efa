//! Head-to-head: block schemes vs. radial baselines on reconstruction PSNR.
//!
//! For each sampling ratio and seed, draw one scheme per family (optimized
//! block draws, golden-angle lines, uniform-random lines), reconstruct the
//! same phantom, and average the PSNR per family. This is a scaled-down run
//! of the `benchmark` CLI subcommand. Run with:
//!
//! ```text
//! cargo run --release --example benchmark_families
//! ```

use blocksampler::densities::{target_radial, CenterMask};
use blocksampler::dictionary::build_line_dictionary;
use blocksampler::recon::phantom::shepp_logan;
use blocksampler::recon::{psnr, reconstruct_image, DouglasRachford};
use blocksampler::sampler::{draw_scheme, radial_scheme_for_ratio, RadialKind, SchemeTarget};
use blocksampler::solver::{solve, SolverConfig};
use blocksampler::wavelet::default_depth;

fn main() -> blocksampler::Result<()> {
    let n = 64;
    let seeds = 5u64;
    let ratios = [0.15, 0.25];

    let image = shepp_logan(n, n);
    let dict = build_line_dictionary(n, n)?;
    let mask = CenterMask::new(n, n, 0.02)?;
    let target = target_radial(n, n, &mask, 2.0)?;
    let sconfig = SolverConfig {
        alpha: 1e-2,
        max_iters: 1500,
        gap_tol: 1e-3,
        ..Default::default()
    };
    let weights = solve(&dict, &target.vector, &sconfig)?.pi;

    let depth = default_depth(n);
    let dr = DouglasRachford {
        gamma: 1.0,
        iterations: 300,
    };

    println!(
        "{n}x{n} phantom, {seeds} seeds per ratio, {} DR iterations",
        dr.iterations
    );
    println!("ratio  family          mean PSNR");
    for ratio in ratios {
        let mut means = Vec::new();
        for family in ["block", "radial-golden", "radial-random"] {
            let mut total = 0.0;
            for s in 0..seeds {
                let scheme = match family {
                    "block" => {
                        draw_scheme(&dict, &weights, &mask, s, SchemeTarget::PixelRatio(ratio))?
                    }
                    "radial-golden" => {
                        radial_scheme_for_ratio(n, n, ratio, RadialKind::GoldenAngle, s, &mask)?
                    }
                    _ => radial_scheme_for_ratio(n, n, ratio, RadialKind::UniformRandom, s, &mask)?,
                };
                let recon = reconstruct_image(&image, &scheme, depth, &dr)?;
                total += psnr(&image, &recon.image)?;
            }
            let mean = total / seeds as f64;
            println!("{ratio:.2}   {family:14}  {mean:6.2} dB");
            means.push((family, mean));
        }
        let block = means.iter().find(|(f, _)| *f == "block").unwrap().1;
        let best_radial = means
            .iter()
            .filter(|(f, _)| *f != "block")
            .map(|&(_, m)| m)
            .fold(f64::NEG_INFINITY, f64::max);
        println!(
            "       block margin over best radial: {:+.2} dB",
            block - best_radial
        );
    }
    Ok(())
}
