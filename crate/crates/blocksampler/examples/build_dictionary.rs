//! Build the two block dictionaries and look at their structure.
//!
//! A dictionary is a list of m pixel blocks of equal size on an n1 x n2
//! grid. The line dictionary rasterizes every boundary-to-boundary straight
//! line (horizontal and vertical families); the rows-columns dictionary is
//! its minimal cousin. Run with:
//!
//! ```text
//! cargo run --example build_dictionary
//! ```

use blocksampler::dictionary::{build_line_dictionary, build_row_column_dictionary};
use blocksampler::formats;

fn main() -> blocksampler::Result<()> {
    let n = 16;

    let lines = build_line_dictionary(n, n)?;
    println!(
        "line dictionary on {n}x{n}: {} blocks of {} pixels each",
        lines.num_blocks(),
        lines.block_len()
    );
    println!(
        "  (one block per (start, end) pair and family: 2 * {n}^2 = {})",
        2 * n * n
    );

    // Show a few rasterized lines as row offsets.
    for &k in &[0usize, n / 2, n * n - 1, n * n + 3] {
        let rows: Vec<u32> = lines.block(k).iter().map(|&p| p / n as u32).collect();
        let cols: Vec<u32> = lines.block(k).iter().map(|&p| p % n as u32).collect();
        println!(
            "  block {k:5}: rows {:?}.. cols {:?}..",
            &rows[..4.min(rows.len())],
            &cols[..4.min(cols.len())]
        );
    }

    // Every pixel knows the blocks crossing it (the adjoint's gather list).
    let center = (n / 2) * n + n / 2;
    println!(
        "  pixel {center} is crossed by {} of the {} blocks",
        lines.blocks_of_pixel(center).len(),
        lines.num_blocks()
    );

    let rowcol = build_row_column_dictionary(n, n)?;
    println!(
        "rows-columns dictionary on {n}x{n}: {} blocks of {} pixels",
        rowcol.num_blocks(),
        rowcol.block_len()
    );

    // Dictionaries round-trip through a plain text format.
    let dir = std::path::Path::new("examples_out/build_dictionary");
    std::fs::create_dir_all(dir)?;
    let path = dir.join("lines_16.txt");
    formats::write_dictionary(&path, &lines)?;
    let back = formats::read_dictionary(&path)?;
    assert_eq!(back.num_blocks(), lines.num_blocks());
    println!("wrote and re-read {}", path.display());
    Ok(())
}
