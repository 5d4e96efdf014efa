//! Plain-text and binary file formats.
//!
//! Everything written here is byte-deterministic for fixed inputs: no
//! timestamps, no locale-dependent formatting, floats printed with Rust's
//! shortest round-trip representation. Text files are whitespace-separated
//! with a single header line.
//!
//! * dictionary: `n1 n2 ell m` then one line of `ell` pixel indices per block
//! * vector (pixel density or block weights): `rows cols` then `index value`
//!   lines for the nonzero entries; pixel files use `n1 n2`, block-weight
//!   files use `1 m`
//! * scheme: `n1 n2 seed ndraws ratio` then one `row col` line per pixel
//! * images: 8/16-bit binary PGM (`P5`), or raw little-endian `f32` with a
//!   JSON sidecar carrying the dimensions
//! * solver trace and benchmark summaries: plain CSV

use std::fs;
use std::io::{BufWriter, Write as IoWrite};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::dictionary::BlockDictionary;
use crate::error::{Error, Result};
use crate::sampler::SamplingScheme;
use crate::simplex::{kahan_sum, ProbabilityVector};
use crate::solver::ConvergenceTrace;

/// Bumped when any on-disk layout changes.
pub const FORMAT_VERSION: u32 = 1;

fn format_err(path: &Path, msg: impl Into<String>) -> Error {
    Error::Format {
        path: path.to_path_buf(),
        msg: msg.into(),
    }
}

fn read_to_string(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(Error::from)
}

// ---------------------------------------------------------------- dictionary

/// Write a dictionary as `n1 n2 ell m` plus one block per line.
pub fn write_dictionary(path: &Path, dict: &BlockDictionary) -> Result<()> {
    let mut out = BufWriter::new(fs::File::create(path)?);
    writeln!(
        out,
        "{} {} {} {}",
        dict.n1(),
        dict.n2(),
        dict.block_len(),
        dict.num_blocks()
    )?;
    for block in dict.blocks_iter() {
        let mut first = true;
        for &p in block {
            if !first {
                write!(out, " ")?;
            }
            write!(out, "{p}")?;
            first = false;
        }
        writeln!(out)?;
    }
    out.flush()?;
    Ok(())
}

/// Read a dictionary written by [`write_dictionary`].
pub fn read_dictionary(path: &Path) -> Result<BlockDictionary> {
    let text = read_to_string(path)?;
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or_else(|| format_err(path, "empty dictionary file"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 4 {
        return Err(format_err(path, "header must be `n1 n2 ell m`"));
    }
    let parse = |s: &str, what: &str| -> Result<usize> {
        s.parse()
            .map_err(|_| format_err(path, format!("bad {what}: {s:?}")))
    };
    let n1 = parse(fields[0], "n1")?;
    let n2 = parse(fields[1], "n2")?;
    let ell = parse(fields[2], "block length")?;
    let m = parse(fields[3], "block count")?;
    let mut blocks = Vec::with_capacity(m);
    for (lineno, line) in lines.enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let block: Vec<u32> = line
            .split_whitespace()
            .map(|s| {
                s.parse::<u32>()
                    .map_err(|_| format_err(path, format!("line {}: bad index {s:?}", lineno + 2)))
            })
            .collect::<Result<_>>()?;
        if block.len() != ell {
            return Err(format_err(
                path,
                format!(
                    "line {}: expected {ell} indices, got {}",
                    lineno + 2,
                    block.len()
                ),
            ));
        }
        blocks.push(block);
    }
    if blocks.len() != m {
        return Err(format_err(
            path,
            format!("header promises {m} blocks, file has {}", blocks.len()),
        ));
    }
    BlockDictionary::from_blocks(n1, n2, blocks)
}

// -------------------------------------------------------------- flat vectors

/// A sparse-text vector file: logical shape plus dense values.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorFile {
    pub rows: usize,
    pub cols: usize,
    pub values: Vec<f64>,
}

/// Write `rows cols` then `index value` lines for each nonzero entry.
pub fn write_vector(path: &Path, rows: usize, cols: usize, values: &[f64]) -> Result<()> {
    if values.len() != rows * cols {
        return Err(Error::input(format!(
            "vector of length {} does not fill a {rows}x{cols} shape",
            values.len()
        )));
    }
    let mut out = BufWriter::new(fs::File::create(path)?);
    writeln!(out, "{rows} {cols}")?;
    for (i, &v) in values.iter().enumerate() {
        if v != 0.0 {
            writeln!(out, "{i} {v}")?;
        }
    }
    out.flush()?;
    Ok(())
}

/// Read a file written by [`write_vector`]; absent indices are zero.
pub fn read_vector(path: &Path) -> Result<VectorFile> {
    let text = read_to_string(path)?;
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or_else(|| format_err(path, "empty vector file"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 2 {
        return Err(format_err(path, "header must be `rows cols`"));
    }
    let rows: usize = fields[0]
        .parse()
        .map_err(|_| format_err(path, format!("bad row count {:?}", fields[0])))?;
    let cols: usize = fields[1]
        .parse()
        .map_err(|_| format_err(path, format!("bad column count {:?}", fields[1])))?;
    let mut values = vec![0.0; rows * cols];
    for (lineno, line) in lines.enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let mut parts = line.split_whitespace();
        let (i, v) = match (parts.next(), parts.next(), parts.next()) {
            (Some(i), Some(v), None) => (i, v),
            _ => {
                return Err(format_err(
                    path,
                    format!("line {}: expected `index value`", lineno + 2),
                ))
            }
        };
        let i: usize = i
            .parse()
            .map_err(|_| format_err(path, format!("line {}: bad index {i:?}", lineno + 2)))?;
        let v: f64 = v
            .parse()
            .map_err(|_| format_err(path, format!("line {}: bad value {v:?}", lineno + 2)))?;
        if i >= values.len() {
            return Err(format_err(
                path,
                format!(
                    "line {}: index {i} out of range for {rows}x{cols}",
                    lineno + 2
                ),
            ));
        }
        values[i] = v;
    }
    Ok(VectorFile { rows, cols, values })
}

/// Unit-mass deviation below which a loaded density is fixed up silently.
pub const SILENT_RENORM_TOL: f64 = 1e-6;
/// Beyond this deviation the file is rejected outright.
pub const REJECT_TOL: f64 = 1e-2;

/// Turn loaded raw values into a probability vector.
///
/// Mass deviations up to [`SILENT_RENORM_TOL`] are normalized silently;
/// larger ones up to [`REJECT_TOL`] are normalized with a returned warning;
/// anything worse is rejected.
pub fn normalize_loaded_density(values: Vec<f64>) -> Result<(ProbabilityVector, Option<String>)> {
    let mass = kahan_sum(values.iter().copied());
    let deviation = (mass - 1.0).abs();
    if deviation > REJECT_TOL {
        return Err(Error::input(format!(
            "density mass {mass} deviates from 1 by {deviation:.3e}, beyond the {REJECT_TOL} limit"
        )));
    }
    let warning = if deviation > SILENT_RENORM_TOL {
        Some(format!(
            "density mass {mass} off by {deviation:.3e}; renormalized"
        ))
    } else {
        None
    };
    Ok((ProbabilityVector::from_weights(values)?, warning))
}

// ------------------------------------------------------------------- schemes

/// Write `n1 n2 seed ndraws ratio` then `row col` lines.
pub fn write_scheme(path: &Path, scheme: &SamplingScheme) -> Result<()> {
    let mut out = BufWriter::new(fs::File::create(path)?);
    writeln!(
        out,
        "{} {} {} {} {}",
        scheme.n1(),
        scheme.n2(),
        scheme.seed(),
        scheme.num_draws(),
        scheme.achieved_ratio()
    )?;
    for &p in scheme.pixels() {
        writeln!(out, "{} {}", p / scheme.n2(), p % scheme.n2())?;
    }
    out.flush()?;
    Ok(())
}

/// Read a scheme written by [`write_scheme`].
pub fn read_scheme(path: &Path) -> Result<SamplingScheme> {
    let text = read_to_string(path)?;
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or_else(|| format_err(path, "empty scheme file"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 5 {
        return Err(format_err(path, "header must be `n1 n2 seed ndraws ratio`"));
    }
    let n1: usize = fields[0].parse().map_err(|_| format_err(path, "bad n1"))?;
    let n2: usize = fields[1].parse().map_err(|_| format_err(path, "bad n2"))?;
    let seed: u64 = fields[2]
        .parse()
        .map_err(|_| format_err(path, "bad seed"))?;
    let ndraws: usize = fields[3]
        .parse()
        .map_err(|_| format_err(path, "bad draw count"))?;
    let _ratio: f64 = fields[4]
        .parse()
        .map_err(|_| format_err(path, "bad ratio"))?;
    let mut pixels = Vec::new();
    for (lineno, line) in lines.enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let mut parts = line.split_whitespace();
        let (r, c) = match (parts.next(), parts.next(), parts.next()) {
            (Some(r), Some(c), None) => (r, c),
            _ => {
                return Err(format_err(
                    path,
                    format!("line {}: expected `row col`", lineno + 2),
                ))
            }
        };
        let r: usize = r
            .parse()
            .map_err(|_| format_err(path, format!("line {}: bad row", lineno + 2)))?;
        let c: usize = c
            .parse()
            .map_err(|_| format_err(path, format!("line {}: bad column", lineno + 2)))?;
        if r >= n1 || c >= n2 {
            return Err(format_err(
                path,
                format!("line {}: pixel ({r}, {c}) outside {n1}x{n2}", lineno + 2),
            ));
        }
        pixels.push(r * n2 + c);
    }
    SamplingScheme::from_pixels(n1, n2, seed, ndraws, pixels)
}

// -------------------------------------------------------------------- images

/// 8-bit binary PGM, one byte per pixel.
pub fn write_pgm8(path: &Path, n1: usize, n2: usize, data: &[u8]) -> Result<()> {
    if data.len() != n1 * n2 {
        return Err(Error::input(format!(
            "image of {} bytes does not fill {n1}x{n2}",
            data.len()
        )));
    }
    let mut out = BufWriter::new(fs::File::create(path)?);
    write!(out, "P5\n{n2} {n1}\n255\n")?;
    out.write_all(data)?;
    out.flush()?;
    Ok(())
}

/// 16-bit binary PGM (big-endian samples, per the format), min-max scaled.
pub fn write_pgm16(path: &Path, n1: usize, n2: usize, data: &[f64]) -> Result<()> {
    if data.len() != n1 * n2 {
        return Err(Error::input(format!(
            "image of {} samples does not fill {n1}x{n2}",
            data.len()
        )));
    }
    let lo = data.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = data.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if !(lo.is_finite() && hi.is_finite()) {
        return Err(Error::input(
            "image contains non-finite samples".to_string(),
        ));
    }
    let span = if hi > lo { hi - lo } else { 1.0 };
    let mut out = BufWriter::new(fs::File::create(path)?);
    write!(out, "P5\n{n2} {n1}\n65535\n")?;
    for &v in data {
        let q = ((v - lo) / span * 65535.0).round() as u16;
        out.write_all(&q.to_be_bytes())?;
    }
    out.flush()?;
    Ok(())
}

/// Read a binary PGM (8- or 16-bit), rescaled to `[0, 1]`.
pub fn read_pgm(path: &Path) -> Result<(usize, usize, Vec<f64>)> {
    let bytes = fs::read(path)?;
    let mut pos = 0usize;
    let mut token = || -> Result<String> {
        // Skip whitespace and `#` comments between header tokens.
        loop {
            while pos < bytes.len() && bytes[pos].is_ascii_whitespace() {
                pos += 1;
            }
            if pos < bytes.len() && bytes[pos] == b'#' {
                while pos < bytes.len() && bytes[pos] != b'\n' {
                    pos += 1;
                }
                continue;
            }
            break;
        }
        let start = pos;
        while pos < bytes.len() && !bytes[pos].is_ascii_whitespace() {
            pos += 1;
        }
        if start == pos {
            return Err(format_err(path, "truncated header"));
        }
        Ok(String::from_utf8_lossy(&bytes[start..pos]).into_owned())
    };
    if token()? != "P5" {
        return Err(format_err(path, "not a binary PGM (`P5`) file"));
    }
    let n2: usize = token()?
        .parse()
        .map_err(|_| format_err(path, "bad width"))?;
    let n1: usize = token()?
        .parse()
        .map_err(|_| format_err(path, "bad height"))?;
    let maxval: u32 = token()?
        .parse()
        .map_err(|_| format_err(path, "bad maxval"))?;
    pos += 1; // single whitespace byte after maxval
    let n = n1 * n2;
    let data = if maxval < 256 {
        if bytes.len() - pos < n {
            return Err(format_err(path, "truncated pixel data"));
        }
        bytes[pos..pos + n]
            .iter()
            .map(|&b| b as f64 / maxval as f64)
            .collect()
    } else if maxval < 65536 {
        if bytes.len() - pos < 2 * n {
            return Err(format_err(path, "truncated pixel data"));
        }
        bytes[pos..pos + 2 * n]
            .chunks_exact(2)
            .map(|c| u16::from_be_bytes([c[0], c[1]]) as f64 / maxval as f64)
            .collect()
    } else {
        return Err(format_err(path, format!("unsupported maxval {maxval}")));
    };
    Ok((n1, n2, data))
}

/// Sidecar describing a raw `f32` image file.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct RawSidecar {
    pub n1: usize,
    pub n2: usize,
    pub format_version: u32,
}

fn sidecar_path(path: &Path) -> PathBuf {
    let mut os = path.as_os_str().to_owned();
    os.push(".json");
    PathBuf::from(os)
}

/// Write little-endian `f32` samples plus a `<path>.json` sidecar.
pub fn write_f32_raw(path: &Path, n1: usize, n2: usize, data: &[f64]) -> Result<()> {
    if data.len() != n1 * n2 {
        return Err(Error::input(format!(
            "image of {} samples does not fill {n1}x{n2}",
            data.len()
        )));
    }
    let mut out = BufWriter::new(fs::File::create(path)?);
    for &v in data {
        out.write_all(&(v as f32).to_le_bytes())?;
    }
    out.flush()?;
    let sidecar = RawSidecar {
        n1,
        n2,
        format_version: FORMAT_VERSION,
    };
    fs::write(sidecar_path(path), serde_json::to_string_pretty(&sidecar)?)?;
    Ok(())
}

/// Read an image written by [`write_f32_raw`].
pub fn read_f32_raw(path: &Path) -> Result<(usize, usize, Vec<f64>)> {
    let sidecar_file = sidecar_path(path);
    let sidecar: RawSidecar = serde_json::from_str(&read_to_string(&sidecar_file)?)
        .map_err(|e| format_err(&sidecar_file, e.to_string()))?;
    let bytes = fs::read(path)?;
    let n = sidecar.n1 * sidecar.n2;
    if bytes.len() != 4 * n {
        return Err(format_err(
            path,
            format!("expected {} bytes for {}x{}", 4 * n, sidecar.n1, sidecar.n2),
        ));
    }
    let data = bytes
        .chunks_exact(4)
        .map(|c| f32::from_le_bytes([c[0], c[1], c[2], c[3]]) as f64)
        .collect();
    Ok((sidecar.n1, sidecar.n2, data))
}

// ----------------------------------------------------------------------- csv

/// Write the solver trace as `iter,J,F,gap,bound,seconds` CSV.
pub fn write_trace_csv(path: &Path, trace: &ConvergenceTrace) -> Result<()> {
    let mut out = BufWriter::new(fs::File::create(path)?);
    writeln!(out, "iter,J,F,gap,bound,seconds")?;
    for row in &trace.rows {
        writeln!(
            out,
            "{},{},{},{},{},{}",
            row.iter, row.dual_value, row.primal_value, row.gap, row.bound, row.seconds
        )?;
    }
    out.flush()?;
    Ok(())
}

/// One benchmark measurement.
#[derive(Debug, Clone, PartialEq)]
pub struct PsnrRow {
    pub scheme: String,
    pub ratio: f64,
    pub seed: u64,
    pub psnr: f64,
}

/// Write benchmark results as `scheme,ratio,seed,psnr` CSV.
pub fn write_psnr_csv(path: &Path, rows: &[PsnrRow]) -> Result<()> {
    let mut out = BufWriter::new(fs::File::create(path)?);
    writeln!(out, "scheme,ratio,seed,psnr")?;
    for row in rows {
        writeln!(
            out,
            "{},{},{},{}",
            row.scheme, row.ratio, row.seed, row.psnr
        )?;
    }
    out.flush()?;
    Ok(())
}

// ---------------------------------------------------------------- provenance

/// Reproducibility record written next to command outputs. Deliberately
/// excludes timestamps so identical runs produce identical bytes.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct Provenance {
    pub config_sha256: String,
    pub seed: u64,
    pub format_version: u32,
}

impl Provenance {
    pub fn new(config_text: &str, seed: u64) -> Self {
        let mut hasher = Sha256::new();
        hasher.update(config_text.as_bytes());
        Self {
            config_sha256: format!("{:x}", hasher.finalize()),
            seed,
            format_version: FORMAT_VERSION,
        }
    }
}

pub fn write_provenance(path: &Path, provenance: &Provenance) -> Result<()> {
    fs::write(path, serde_json::to_string_pretty(provenance)?)?;
    Ok(())
}

pub fn read_provenance(path: &Path) -> Result<Provenance> {
    serde_json::from_str(&read_to_string(path)?).map_err(|e| format_err(path, e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dictionary::build_row_column_dictionary;
    use tempfile::tempdir;

    #[test]
    fn dictionary_round_trips() {
        let dir = tempdir().unwrap();
        let path = dir.path().join("dict.txt");
        let dict = build_row_column_dictionary(3, 3).unwrap();
        write_dictionary(&path, &dict).unwrap();
        let back = read_dictionary(&path).unwrap();
        assert_eq!(back.n1(), 3);
        assert_eq!(back.num_blocks(), dict.num_blocks());
        for k in 0..dict.num_blocks() {
            assert_eq!(back.block(k), dict.block(k));
        }
    }

    #[test]
    fn dictionary_read_rejects_malformed_files() {
        let dir = tempdir().unwrap();
        let path = dir.path().join("dict.txt");
        for text in [
            "",
            "3 3 3\n",
            "3 3 3 1\n0 1\n",
            "3 3 2 2\n0 1\n",
            "3 3 2 1\n0 x\n",
        ] {
            fs::write(&path, text).unwrap();
            assert!(read_dictionary(&path).is_err(), "accepted {text:?}");
        }
    }

    #[test]
    fn vector_round_trips_with_sparse_storage() {
        let dir = tempdir().unwrap();
        let path = dir.path().join("density.txt");
        let mut values = vec![0.0; 12];
        values[3] = 0.25;
        values[7] = 0.75;
        write_vector(&path, 3, 4, &values).unwrap();
        let text = fs::read_to_string(&path).unwrap();
        assert_eq!(text, "3 4\n3 0.25\n7 0.75\n");
        let back = read_vector(&path).unwrap();
        assert_eq!(back.rows, 3);
        assert_eq!(back.cols, 4);
        assert_eq!(back.values, values);
    }

    #[test]
    fn block_weight_files_use_a_flat_header() {
        let dir = tempdir().unwrap();
        let path = dir.path().join("weights.txt");
        write_vector(&path, 1, 6, &[0.5, 0.5, 0.0, 0.0, 0.0, 0.0]).unwrap();
        let text = fs::read_to_string(&path).unwrap();
        assert!(text.starts_with("1 6\n"));
    }

    #[test]
    fn density_normalization_ladder() {
        // Tiny deviation: silent.
        let v = vec![0.5, 0.5 + 1e-9];
        let (p, warning) = normalize_loaded_density(v).unwrap();
        assert!(warning.is_none());
        assert!((kahan_sum(p.values().iter().copied()) - 1.0).abs() <= 1e-12);
        // Moderate: renormalize with a warning.
        let (p, warning) = normalize_loaded_density(vec![0.5, 0.505]).unwrap();
        assert!(warning.unwrap().contains("renormalized"));
        assert!((kahan_sum(p.values().iter().copied()) - 1.0).abs() <= 1e-12);
        // Gross: reject.
        assert!(normalize_loaded_density(vec![0.5, 0.6]).is_err());
        // Negative entries always rejected.
        assert!(normalize_loaded_density(vec![1.1, -0.1]).is_err());
    }

    #[test]
    fn scheme_round_trips() {
        let dir = tempdir().unwrap();
        let path = dir.path().join("scheme.txt");
        let scheme = SamplingScheme::from_pixels(4, 6, 42, 9, vec![0, 5, 13, 23]).unwrap();
        write_scheme(&path, &scheme).unwrap();
        let text = fs::read_to_string(&path).unwrap();
        let ratio = 4.0 / 24.0;
        assert_eq!(text, format!("4 6 42 9 {ratio}\n0 0\n0 5\n2 1\n3 5\n"));
        let back = read_scheme(&path).unwrap();
        assert_eq!(back, scheme);
    }

    #[test]
    fn scheme_read_rejects_out_of_range_pixels() {
        let dir = tempdir().unwrap();
        let path = dir.path().join("scheme.txt");
        fs::write(&path, "4 4 0 0 0.1\n4 0\n").unwrap();
        assert!(read_scheme(&path).is_err());
    }

    #[test]
    fn pgm8_layout_is_exact() {
        let dir = tempdir().unwrap();
        let path = dir.path().join("mask.pgm");
        write_pgm8(&path, 2, 3, &[0, 255, 0, 255, 0, 255]).unwrap();
        let bytes = fs::read(&path).unwrap();
        assert_eq!(&bytes[..], b"P5\n3 2\n255\n\x00\xff\x00\xff\x00\xff");
        let (n1, n2, data) = read_pgm(&path).unwrap();
        assert_eq!((n1, n2), (2, 3));
        assert_eq!(data, vec![0.0, 1.0, 0.0, 1.0, 0.0, 1.0]);
    }

    #[test]
    fn pgm16_round_trips_up_to_quantization() {
        let dir = tempdir().unwrap();
        let path = dir.path().join("img.pgm");
        let data: Vec<f64> = (0..32).map(|i| (i as f64 / 31.0).powi(2)).collect();
        write_pgm16(&path, 4, 8, &data).unwrap();
        let (n1, n2, back) = read_pgm(&path).unwrap();
        assert_eq!((n1, n2), (4, 8));
        for (a, b) in data.iter().zip(&back) {
            assert!((a - b).abs() < 1.0 / 65535.0, "{a} vs {b}");
        }
    }

    #[test]
    fn f32_raw_round_trips_with_sidecar() {
        let dir = tempdir().unwrap();
        let path = dir.path().join("img.f32");
        let data: Vec<f64> = (0..6).map(|i| i as f64 * 0.5 - 1.0).collect();
        write_f32_raw(&path, 2, 3, &data).unwrap();
        assert!(dir.path().join("img.f32.json").exists());
        let (n1, n2, back) = read_f32_raw(&path).unwrap();
        assert_eq!((n1, n2), (2, 3));
        for (a, b) in data.iter().zip(&back) {
            assert!((a - b).abs() < 1e-7);
        }
    }

    #[test]
    fn csv_layouts_are_stable() {
        let dir = tempdir().unwrap();
        let trace_path = dir.path().join("trace.csv");
        let trace = ConvergenceTrace {
            rows: vec![crate::solver::TraceRow {
                iter: 3,
                dual_value: 0.5,
                primal_value: 1.5,
                gap: 2.0,
                bound: 4.0,
                seconds: 0.25,
            }],
        };
        write_trace_csv(&trace_path, &trace).unwrap();
        assert_eq!(
            fs::read_to_string(&trace_path).unwrap(),
            "iter,J,F,gap,bound,seconds\n3,0.5,1.5,2,4,0.25\n"
        );
        let psnr_path = dir.path().join("psnr.csv");
        write_psnr_csv(
            &psnr_path,
            &[PsnrRow {
                scheme: "radial".into(),
                ratio: 0.15,
                seed: 7,
                psnr: 31.25,
            }],
        )
        .unwrap();
        assert_eq!(
            fs::read_to_string(&psnr_path).unwrap(),
            "scheme,ratio,seed,psnr\nradial,0.15,7,31.25\n"
        );
    }

    #[test]
    fn provenance_is_deterministic_and_timestamp_free() {
        let dir = tempdir().unwrap();
        let path = dir.path().join("provenance.json");
        let p = Provenance::new("alpha = 0.01", 9);
        write_provenance(&path, &p).unwrap();
        let first = fs::read(&path).unwrap();
        write_provenance(&path, &Provenance::new("alpha = 0.01", 9)).unwrap();
        assert_eq!(first, fs::read(&path).unwrap(), "bytes must be identical");
        let back = read_provenance(&path).unwrap();
        assert_eq!(back, p);
        assert_eq!(back.config_sha256.len(), 64);
        let text = String::from_utf8(first).unwrap();
        assert!(!text.to_lowercase().contains("time"));
    }
}
