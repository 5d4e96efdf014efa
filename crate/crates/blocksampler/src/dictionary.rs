//! Block dictionaries over an `n1 x n2` pixel grid.
//!
//! A dictionary is an ordered list of `m` blocks, each a set of exactly `ell`
//! distinct pixels (constant cardinality is what makes the measurement map of
//! [`crate::linop`] simplex-preserving). Two built-in families are provided:
//!
//! * discrete lines rasterized between edge offsets (`ell = n1`, `m = 2*n1^2`
//!   on square grids), and
//! * plain rows and columns (`ell = n1`, `m = n1 + n2`), mostly useful as a
//!   small, fully checkable instance.
//!
//! Pixels are indexed row-major: pixel `(row, col)` has index `row*n2 + col`.

use crate::error::{Error, Result};

/// Orientation of a rasterized line.
///
/// `Horizontal` lines run across columns, one pixel per column, between a
/// start row offset on the left edge and an end row offset on the right edge.
/// `Vertical` swaps the roles of rows and columns.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LineFamily {
    Horizontal,
    Vertical,
}

/// Rounds to the nearest integer, halves up. `round_half_up(0.5) == 1`.
fn round_half_up(x: f64) -> usize {
    (x + 0.5).floor() as usize
}

/// Rasterizes one discrete line, returning its row-major pixel indices.
///
/// For a horizontal line the interpolated row at column `j` is
/// `round(start + j*(end - start)/(n2 - 1))`, so the line always touches the
/// left edge at row `start` and the right edge at row `end` and holds exactly
/// one pixel per column. Offsets must lie in `[0, n1)` (horizontal) or
/// `[0, n2)` (vertical).
pub fn rasterize_line(
    family: LineFamily,
    start: usize,
    end: usize,
    n1: usize,
    n2: usize,
) -> Result<Vec<u32>> {
    if n1 == 0 || n2 == 0 {
        return Err(Error::input("grid dimensions must be positive"));
    }
    let (span, steps) = match family {
        LineFamily::Horizontal => (n1, n2),
        LineFamily::Vertical => (n2, n1),
    };
    if start >= span || end >= span {
        return Err(Error::input(format!(
            "line offsets ({start}, {end}) out of range for span {span}"
        )));
    }
    let slope_num = end as f64 - start as f64;
    let denom = (steps - 1).max(1) as f64;
    let mut pixels = Vec::with_capacity(steps);
    for j in 0..steps {
        let t = if steps == 1 {
            start
        } else {
            round_half_up(start as f64 + j as f64 * slope_num / denom)
        };
        let idx = match family {
            LineFamily::Horizontal => t * n2 + j,
            LineFamily::Vertical => j * n2 + t,
        };
        pixels.push(idx as u32);
    }
    Ok(pixels)
}

/// First structural defect found in a block list, if any.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    EmptyDictionary,
    CardinalityMismatch {
        block: usize,
        expected: usize,
        got: usize,
    },
    PixelOutOfRange {
        block: usize,
        pixel: u32,
    },
    DuplicatePixel {
        block: usize,
        pixel: u32,
    },
    IncidenceMismatch {
        pixel: u32,
    },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::EmptyDictionary => write!(f, "dictionary has no blocks"),
            Violation::CardinalityMismatch {
                block,
                expected,
                got,
            } => {
                write!(f, "block {block} has {got} pixels, expected {expected}")
            }
            Violation::PixelOutOfRange { block, pixel } => {
                write!(f, "block {block} references pixel {pixel} outside the grid")
            }
            Violation::DuplicatePixel { block, pixel } => {
                write!(f, "block {block} lists pixel {pixel} twice")
            }
            Violation::IncidenceMismatch { pixel } => {
                write!(
                    f,
                    "incidence list of pixel {pixel} disagrees with the block list"
                )
            }
        }
    }
}

/// An ordered family of constant-cardinality pixel blocks.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockDictionary {
    n1: usize,
    n2: usize,
    ell: usize,
    /// Concatenated pixel indices; block `k` is `blocks[k*ell..(k+1)*ell]`.
    blocks: Vec<u32>,
    /// CSR offsets into `pixel_blocks`, one slot per pixel plus a sentinel.
    pixel_offsets: Vec<u32>,
    /// For each pixel, the blocks containing it, ascending.
    pixel_blocks: Vec<u32>,
}

impl BlockDictionary {
    /// Builds a dictionary from explicit blocks, validating every invariant.
    pub fn from_blocks(n1: usize, n2: usize, block_list: Vec<Vec<u32>>) -> Result<Self> {
        if n1 == 0 || n2 == 0 {
            return Err(Error::input("grid dimensions must be positive"));
        }
        validate_block_list(n1, n2, &block_list)
            .map_err(|v| Error::input(format!("invalid dictionary: {v}")))?;
        let ell = block_list[0].len();
        let m = block_list.len();
        let n = n1 * n2;

        let mut blocks = Vec::with_capacity(m * ell);
        for b in &block_list {
            blocks.extend_from_slice(b);
        }

        // Counting pass then placement pass gives per-pixel lists that are
        // automatically sorted by block index.
        let mut counts = vec![0u32; n + 1];
        for &p in &blocks {
            counts[p as usize + 1] += 1;
        }
        for i in 0..n {
            counts[i + 1] += counts[i];
        }
        let pixel_offsets = counts;
        let mut cursor: Vec<u32> = pixel_offsets[..n].to_vec();
        let mut pixel_blocks = vec![0u32; m * ell];
        for (k, b) in block_list.iter().enumerate() {
            for &p in b {
                let slot = cursor[p as usize];
                pixel_blocks[slot as usize] = k as u32;
                cursor[p as usize] += 1;
            }
        }

        Ok(Self {
            n1,
            n2,
            ell,
            blocks,
            pixel_offsets,
            pixel_blocks,
        })
    }

    pub fn n1(&self) -> usize {
        self.n1
    }

    pub fn n2(&self) -> usize {
        self.n2
    }

    /// Number of pixels `n = n1 * n2`.
    pub fn num_pixels(&self) -> usize {
        self.n1 * self.n2
    }

    /// Number of blocks `m`.
    pub fn num_blocks(&self) -> usize {
        self.blocks.len() / self.ell
    }

    /// Common block cardinality `ell`.
    pub fn block_len(&self) -> usize {
        self.ell
    }

    /// Pixels of block `k`.
    pub fn block(&self, k: usize) -> &[u32] {
        &self.blocks[k * self.ell..(k + 1) * self.ell]
    }

    pub fn blocks_iter(&self) -> impl Iterator<Item = &[u32]> {
        self.blocks.chunks_exact(self.ell)
    }

    /// Blocks containing `pixel`, ascending.
    pub fn blocks_of_pixel(&self, pixel: usize) -> &[u32] {
        let lo = self.pixel_offsets[pixel] as usize;
        let hi = self.pixel_offsets[pixel + 1] as usize;
        &self.pixel_blocks[lo..hi]
    }

    /// Re-checks every structural invariant, including the incidence lists.
    pub fn validate(&self) -> std::result::Result<(), Violation> {
        let block_list: Vec<Vec<u32>> = self.blocks_iter().map(|b| b.to_vec()).collect();
        validate_block_list(self.n1, self.n2, &block_list)?;
        let mut seen = vec![0u32; self.num_pixels()];
        for b in &block_list {
            for &p in b {
                seen[p as usize] += 1;
            }
        }
        for (pixel, &count) in seen.iter().enumerate() {
            let incident = self.blocks_of_pixel(pixel);
            if incident.len() != count as usize
                || incident.windows(2).any(|w| w[0] >= w[1])
                || incident
                    .iter()
                    .any(|&k| !self.block(k as usize).contains(&(pixel as u32)))
            {
                return Err(Violation::IncidenceMismatch {
                    pixel: pixel as u32,
                });
            }
        }
        Ok(())
    }
}

/// Checks cardinality, range and distinctness; reports the first violation.
pub fn validate_block_list(
    n1: usize,
    n2: usize,
    block_list: &[Vec<u32>],
) -> std::result::Result<(), Violation> {
    if block_list.is_empty() || block_list[0].is_empty() {
        return Err(Violation::EmptyDictionary);
    }
    let ell = block_list[0].len();
    let n = (n1 * n2) as u32;
    let mut seen = vec![false; n as usize];
    for (k, b) in block_list.iter().enumerate() {
        if b.len() != ell {
            return Err(Violation::CardinalityMismatch {
                block: k,
                expected: ell,
                got: b.len(),
            });
        }
        for &p in b {
            if p >= n {
                return Err(Violation::PixelOutOfRange { block: k, pixel: p });
            }
            if seen[p as usize] {
                return Err(Violation::DuplicatePixel { block: k, pixel: p });
            }
            seen[p as usize] = true;
        }
        for &p in b {
            seen[p as usize] = false;
        }
    }
    Ok(())
}

/// Dictionary of all discrete lines between edge offsets: every horizontal
/// `(start, end)` pair first, then every vertical pair, each rasterized by
/// [`rasterize_line`]. Requires a square grid with `n1 >= 2`; identical pixel
/// sets arising from different offset pairs are kept as distinct blocks.
pub fn build_line_dictionary(n1: usize, n2: usize) -> Result<BlockDictionary> {
    if n1 != n2 {
        return Err(Error::input(format!(
            "line dictionary needs a square grid, got {n1}x{n2}"
        )));
    }
    if n1 < 2 {
        return Err(Error::input("line dictionary needs a grid of at least 2x2"));
    }
    let mut blocks = Vec::with_capacity(n1 * n1 + n2 * n2);
    for start in 0..n1 {
        for end in 0..n1 {
            blocks.push(rasterize_line(LineFamily::Horizontal, start, end, n1, n2)?);
        }
    }
    for start in 0..n2 {
        for end in 0..n2 {
            blocks.push(rasterize_line(LineFamily::Vertical, start, end, n1, n2)?);
        }
    }
    BlockDictionary::from_blocks(n1, n2, blocks)
}

/// Dictionary of the `n1` rows followed by the `n2` columns. Requires a
/// square grid so that all blocks share one cardinality.
pub fn build_row_column_dictionary(n1: usize, n2: usize) -> Result<BlockDictionary> {
    if n1 != n2 {
        return Err(Error::input(format!(
            "row/column dictionary needs a square grid, got {n1}x{n2}"
        )));
    }
    if n1 == 0 {
        return Err(Error::input("grid dimensions must be positive"));
    }
    let mut blocks = Vec::with_capacity(n1 + n2);
    for r in 0..n1 {
        blocks.push((0..n2).map(|c| (r * n2 + c) as u32).collect());
    }
    for c in 0..n2 {
        blocks.push((0..n1).map(|r| (r * n2 + c) as u32).collect());
    }
    BlockDictionary::from_blocks(n1, n2, blocks)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[u32]) -> std::collections::BTreeSet<u32> {
        v.iter().copied().collect()
    }

    #[test]
    fn flat_horizontal_line_is_a_row() {
        let px = rasterize_line(LineFamily::Horizontal, 0, 0, 3, 3).unwrap();
        assert_eq!(px, vec![0, 1, 2]);
    }

    #[test]
    fn sloped_horizontal_line_is_the_main_diagonal() {
        // Rows interpolate 0, 1, 2 across the three columns.
        let px = rasterize_line(LineFamily::Horizontal, 0, 2, 3, 3).unwrap();
        assert_eq!(px, vec![0, 4, 8]);
    }

    #[test]
    fn vertical_line_is_a_column() {
        let px = rasterize_line(LineFamily::Vertical, 1, 1, 3, 3).unwrap();
        assert_eq!(px, vec![1, 4, 7]);
    }

    #[test]
    fn half_offsets_round_up() {
        // Row at the middle column of a 3-wide grid interpolates to 0.5.
        let px = rasterize_line(LineFamily::Horizontal, 0, 1, 2, 3).unwrap();
        assert_eq!(px, vec![0, 3 + 1, 3 + 2]);
    }

    #[test]
    fn rejects_out_of_range_offsets() {
        assert!(rasterize_line(LineFamily::Horizontal, 3, 0, 3, 3).is_err());
        assert!(rasterize_line(LineFamily::Vertical, 0, 5, 4, 4).is_err());
    }

    #[test]
    fn line_dictionary_2x2_enumerated_by_hand() {
        // All eight offset pairs of the 2x2 grid, worked out on paper.
        let d = build_line_dictionary(2, 2).unwrap();
        assert_eq!(d.num_blocks(), 8);
        assert_eq!(d.block_len(), 2);
        let expected: [&[u32]; 8] = [
            &[0, 1], // horizontal (0,0)
            &[0, 3], // horizontal (0,1)
            &[2, 1], // horizontal (1,0)
            &[2, 3], // horizontal (1,1)
            &[0, 2], // vertical (0,0)
            &[0, 3], // vertical (0,1)
            &[1, 2], // vertical (1,0)
            &[1, 3], // vertical (1,1)
        ];
        for (k, want) in expected.iter().enumerate() {
            assert_eq!(d.block(k), *want, "block {k}");
        }
    }

    #[test]
    fn line_dictionary_3x3_shape() {
        let d = build_line_dictionary(3, 3).unwrap();
        assert_eq!(d.num_blocks(), 18);
        assert_eq!(d.block_len(), 3);
        assert_eq!(d.num_pixels(), 9);
        assert!(d.validate().is_ok());
    }

    #[test]
    fn line_dictionary_256_shape() {
        let d = build_line_dictionary(256, 256).unwrap();
        assert_eq!(d.num_blocks(), 131072);
        assert_eq!(d.block_len(), 256);
        // Spot-check that every block stays in range and has one pixel per
        // column/row (distinctness is enforced during construction).
        assert_eq!(d.block(0).len(), 256);
        assert!(d.validate().is_ok());
    }

    #[test]
    fn line_dictionary_rejects_non_square_and_tiny_grids() {
        assert!(build_line_dictionary(4, 8).is_err());
        assert!(build_line_dictionary(1, 1).is_err());
    }

    #[test]
    fn row_column_dictionary_3x3_matches_hand_enumeration() {
        let d = build_row_column_dictionary(3, 3).unwrap();
        assert_eq!(d.num_blocks(), 6);
        assert_eq!(d.block_len(), 3);
        // Second block is the middle row: pixels 4, 5, 6 in 1-based numbering.
        assert_eq!(d.block(1), &[3, 4, 5]);
        // Fifth block is the middle column.
        assert_eq!(d.block(4), &[1, 4, 7]);
        assert!(d.validate().is_ok());
    }

    #[test]
    fn incidence_lists_are_consistent() {
        let d = build_line_dictionary(5, 5).unwrap();
        let mut total = 0usize;
        for pixel in 0..d.num_pixels() {
            for &k in d.blocks_of_pixel(pixel) {
                assert!(
                    d.block(k as usize).contains(&(pixel as u32)),
                    "pixel {pixel} lists block {k} but the block misses it"
                );
            }
            total += d.blocks_of_pixel(pixel).len();
        }
        assert_eq!(total, d.num_blocks() * d.block_len());
    }

    #[test]
    fn transposing_the_grid_swaps_line_families() {
        // Rasterizing (start, end) horizontally and reading the result
        // through the transposition (r, c) -> (c, r) must give the vertical
        // rasterization of the same offsets.
        for n in [2usize, 3, 4, 7] {
            for start in 0..n {
                for end in 0..n {
                    let h = rasterize_line(LineFamily::Horizontal, start, end, n, n).unwrap();
                    let v = rasterize_line(LineFamily::Vertical, start, end, n, n).unwrap();
                    let transposed: Vec<u32> = h
                        .iter()
                        .map(|&p| {
                            let (r, c) = ((p as usize) / n, (p as usize) % n);
                            (c * n + r) as u32
                        })
                        .collect();
                    assert_eq!(set(&transposed), set(&v), "n={n} start={start} end={end}");
                }
            }
        }
    }

    #[test]
    fn validate_reports_first_defect() {
        let bad = vec![vec![0u32, 1], vec![2]];
        match validate_block_list(2, 2, &bad) {
            Err(Violation::CardinalityMismatch { block: 1, .. }) => {}
            other => panic!("expected cardinality violation, got {other:?}"),
        }
        let oob = vec![vec![0u32, 7]];
        match validate_block_list(2, 2, &oob) {
            Err(Violation::PixelOutOfRange { pixel: 7, .. }) => {}
            other => panic!("expected range violation, got {other:?}"),
        }
        let dup = vec![vec![3u32, 3]];
        match validate_block_list(2, 2, &dup) {
            Err(Violation::DuplicatePixel { pixel: 3, .. }) => {}
            other => panic!("expected duplicate violation, got {other:?}"),
        }
    }
}
