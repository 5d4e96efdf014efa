//! Solve for block weights that reproduce a target pixel density.
//!
//! Given a dictionary with measurement map M (block weights -> pixel hit
//! probabilities) and a target density p, the solver minimizes
//! `||M pi - p||_1 + alpha * E(pi)` over the probability simplex by running
//! an accelerated first-order scheme on the smooth dual. Run with:
//!
//! ```text
//! cargo run --example solve_weights
//! ```

use blocksampler::densities::{target_radial, CenterMask};
use blocksampler::dictionary::build_line_dictionary;
use blocksampler::solver::{eval_primal, solve, SolverConfig};

fn main() -> blocksampler::Result<()> {
    let n = 32;
    let dict = build_line_dictionary(n, n)?;
    let mask = CenterMask::new(n, n, 0.02)?;
    let target = target_radial(n, n, &mask, 2.0)?;

    let config = SolverConfig {
        alpha: 1e-2,
        max_iters: 2000,
        gap_tol: 1e-4,
        trace_every: 100,
        ..SolverConfig::default()
    };

    println!(
        "solving on the {}-block line dictionary ({}x{} grid), alpha = {}",
        dict.num_blocks(),
        n,
        n,
        config.alpha
    );
    let result = solve(&dict, &target.vector, &config)?;

    println!("step constant L = {:.3e}", result.lipschitz);
    println!("iter   dual J        primal F      gap F+J");
    for row in &result.trace.rows {
        println!(
            "{:5}  {:11.6}  {:11.6}  {:.3e}",
            row.iter, row.dual_value, row.primal_value, row.gap
        );
    }
    println!(
        "stopped after {} iterations (best dual at iteration {})",
        result.iterations, result.best_iter
    );

    // The duality gap bounds the primal suboptimality, so a small gap
    // certifies the weights themselves.
    let f = eval_primal(
        &dict,
        result.pi.values(),
        target.vector.values(),
        config.alpha,
    )?;
    println!(
        "certified: F(pi) = {:.6} is within {:.3e} of optimal",
        f,
        result.trace.best_gap()
    );

    // The weights are a probability vector over blocks; show the heaviest.
    let mut idx: Vec<usize> = (0..dict.num_blocks()).collect();
    idx.sort_by(|&a, &b| result.pi.values()[b].total_cmp(&result.pi.values()[a]));
    println!("heaviest blocks:");
    for &k in &idx[..5] {
        println!("  block {k:4}  weight {:.5}", result.pi.values()[k]);
    }
    Ok(())
}
