//! Build target pixel densities on the centered frequency grid.
//!
//! Two families are provided: a radial power law |k|^(-e) around the grid
//! center, and a transform-coherence density whose weight at each frequency
//! is the squared peak wavelet coefficient of that frequency's complex
//! exponential. Both accept a central square mask whose pixels get weight
//! zero (they are meant to be sampled deterministically). Run with:
//!
//! ```text
//! cargo run --example target_densities
//! ```

use blocksampler::densities::{target_opt, target_radial, CenterMask};
use blocksampler::formats;

fn main() -> blocksampler::Result<()> {
    let n = 64;
    let mask = CenterMask::new(n, n, 0.03)?;
    println!(
        "center mask: {}x{} square, {} pixels ({:.2}% of the grid, 3% requested)",
        mask.side(),
        mask.side(),
        mask.num_pixels(),
        100.0 * mask.achieved_fraction()
    );

    let radial = target_radial(n, n, &mask, 2.0)?;
    let opt = target_opt(n, n, &mask, 3)?;

    // Radial decay: compare weights one step and n/4 steps from the center.
    let c = (n / 2) * n + n / 2;
    let near = c + mask.side() / 2 + 1;
    let far = c + n / 4;
    println!(
        "radial density: w(near)/w(far) = {:.2} (inverse-square decay)",
        radial.vector.values()[near] / radial.vector.values()[far]
    );
    println!(
        "opt density:    w(near)/w(far) = {:.2} (transform coherence, flatter)",
        opt.vector.values()[near] / opt.vector.values()[far]
    );

    // Masked pixels carry no mass in either density.
    for &p in &mask.pixels()[..3] {
        assert_eq!(radial.vector.values()[p], 0.0);
        assert_eq!(opt.vector.values()[p], 0.0);
    }
    println!("masked pixels carry zero weight in both densities");

    let dir = std::path::Path::new("examples_out/target_densities");
    std::fs::create_dir_all(dir)?;
    for (name, d) in [("radial", &radial), ("opt", &opt)] {
        let txt = dir.join(format!("{name}.txt"));
        formats::write_vector(&txt, n, n, d.vector.values())?;
        // A 16-bit grayscale rendering for quick visual inspection.
        let pgm = dir.join(format!("{name}.pgm"));
        formats::write_pgm16(&pgm, n, n, d.vector.values())?;
        println!("wrote {} and {}", txt.display(), pgm.display());
    }
    Ok(())
}
