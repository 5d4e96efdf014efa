//! End-to-end tests of the command-line binary: exit codes, flag overlays,
//! and byte-for-byte determinism of every artifact under a fixed seed.

use std::collections::BTreeSet;
use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

/// Run the binary with `args` and extra environment variables.
fn run_with_env(args: &[&str], envs: &[(&str, &str)]) -> Output {
    let mut command = Command::new(env!("CARGO_BIN_EXE_blocksampler"));
    command.args(args);
    for (key, value) in envs {
        command.env(key, value);
    }
    command.output().expect("binary should spawn")
}

fn run(args: &[&str]) -> Output {
    run_with_env(args, &[])
}

fn exit_code(output: &Output) -> i32 {
    output
        .status
        .code()
        .expect("binary should not be killed by a signal")
}

fn assert_success(output: &Output, context: &str) {
    assert!(
        output.status.success(),
        "{context} failed (code {:?})\nstdout:\n{}\nstderr:\n{}",
        output.status.code(),
        String::from_utf8_lossy(&output.stdout),
        String::from_utf8_lossy(&output.stderr),
    );
}

fn path_str(path: &Path) -> &str {
    path.to_str().expect("temp paths are valid UTF-8")
}

/// Parse a sparse `rows cols` / `index value` text vector into a dense vec.
fn read_dense_vector(path: &Path) -> Vec<f64> {
    let text = fs::read_to_string(path).unwrap();
    let mut lines = text.lines();
    let header: Vec<usize> = lines
        .next()
        .unwrap()
        .split_whitespace()
        .map(|f| f.parse().unwrap())
        .collect();
    let mut values = vec![0.0; header[0] * header[1]];
    for line in lines.filter(|l| !l.trim().is_empty()) {
        let mut fields = line.split_whitespace();
        let index: usize = fields.next().unwrap().parse().unwrap();
        values[index] = fields.next().unwrap().parse().unwrap();
    }
    values
}

/// Drop the wall-clock column from a solver trace so reruns compare equal.
fn strip_seconds_column(trace: &[u8]) -> String {
    String::from_utf8_lossy(trace)
        .lines()
        .map(|line| {
            let mut fields: Vec<&str> = line.split(',').collect();
            fields.pop();
            fields.join(",")
        })
        .collect::<Vec<_>>()
        .join("\n")
}

fn file_names(dir: &Path) -> BTreeSet<String> {
    fs::read_dir(dir)
        .unwrap()
        .map(|entry| entry.unwrap().file_name().to_string_lossy().into_owned())
        .collect()
}

#[test]
fn help_exits_zero_and_usage_errors_exit_one() {
    let help = run(&["--help"]);
    assert_eq!(exit_code(&help), 0);
    let text = String::from_utf8_lossy(&help.stdout);
    for subcommand in [
        "build-dict",
        "make-density",
        "solve",
        "sample",
        "coverage",
        "reconstruct",
        "benchmark",
    ] {
        assert!(text.contains(subcommand), "help does not list {subcommand}");
    }

    // No subcommand and unknown flags are caller mistakes.
    assert_eq!(exit_code(&run(&[])), 1);
    assert_eq!(exit_code(&run(&["solve", "--frobnicate"])), 1);
    assert_eq!(exit_code(&run(&["no-such-command"])), 1);
}

#[test]
fn invalid_configurations_exit_one() {
    let dir = TempDir::new().unwrap();

    // Unknown keys are rejected, and the offending key is named.
    let bad_key = dir.path().join("bad_key.json");
    fs::write(&bad_key, r#"{"solver": {"alfa": 0.1}}"#).unwrap();
    let output = run(&["--config", path_str(&bad_key), "build-dict"]);
    assert_eq!(exit_code(&output), 1);
    assert!(
        String::from_utf8_lossy(&output.stderr).contains("alfa"),
        "error should name the unknown key"
    );

    // Missing file.
    let missing = dir.path().join("missing.json");
    assert_eq!(
        exit_code(&run(&["--config", path_str(&missing), "build-dict"])),
        1
    );

    // Well-formed JSON with an out-of-range value.
    let bad_value = dir.path().join("bad_value.json");
    fs::write(&bad_value, r#"{"density": {"mask_fraction": 2.0}}"#).unwrap();
    assert_eq!(
        exit_code(&run(&["--config", path_str(&bad_value), "make-density"])),
        1
    );
}

#[test]
fn unreachable_sampling_ratio_exits_two() {
    let dir = TempDir::new().unwrap();
    let config_path = dir.path().join("config.json");
    fs::write(
        &config_path,
        r#"{
            "dictionary": {"kind": "rows-columns", "n1": 4, "n2": 4},
            "density": {"mask_fraction": 0.0},
            "sampling": {"ratio": 0.5}
        }"#,
    )
    .unwrap();
    // All weight on one 4-pixel row: half the 16-pixel grid is unreachable,
    // so the draw loop must give up with a numerical error.
    let weights_path = dir.path().join("weights.txt");
    fs::write(&weights_path, "1 8\n0 1\n").unwrap();

    let output = run(&[
        "--config",
        path_str(&config_path),
        "--output-dir",
        path_str(&dir.path().join("out")),
        "sample",
        "--weights",
        path_str(&weights_path),
    ]);
    assert_eq!(exit_code(&output), 2);
    assert!(
        String::from_utf8_lossy(&output.stderr).contains("stalled"),
        "stderr should explain the stall"
    );
}

#[test]
fn solve_splits_weight_between_blocks_through_a_target_spike() {
    let dir = TempDir::new().unwrap();
    // A 3x3 grid with all target mass on the center pixel. Exactly two
    // blocks of the rows-and-columns dictionary pass through that pixel
    // (the middle row and the middle column), and by symmetry the solved
    // weights must split evenly between them.
    fs::write(dir.path().join("toy_density.txt"), "3 3\n4 1\n").unwrap();
    let config_path = dir.path().join("config.json");
    fs::write(
        &config_path,
        r#"{
            "dictionary": {"kind": "rows-columns", "n1": 3, "n2": 3},
            "density": {"kind": "custom", "path": "toy_density.txt", "mask_fraction": 0.0},
            "solver": {"alpha": 0.01, "max_iters": 10, "gap_tol": 1e-7, "trace_every": 25}
        }"#,
    )
    .unwrap();

    let out_dir = dir.path().join("out");
    let output = run(&[
        "--config",
        path_str(&config_path),
        "--output-dir",
        path_str(&out_dir),
        "solve",
        "--max-iters",
        "300000",
    ]);
    assert_success(&output, "solve");

    let weights = read_dense_vector(&out_dir.join("weights.txt"));
    assert_eq!(weights.len(), 6);
    let (middle_row, middle_column) = (weights[1], weights[4]);
    assert!(
        (middle_row - middle_column).abs() < 1e-5,
        "symmetric blocks should carry equal weight, got {middle_row} vs {middle_column}"
    );
    for other in [0, 2, 3, 5] {
        assert!(
            weights[other] < middle_row,
            "block {other} should weigh less than the blocks through the spike"
        );
    }

    // The configured 10 iterations cannot reach the gap tolerance; reaching
    // it proves the command-line --max-iters override took effect. The
    // solver always records its stopping iteration, so the last trace row
    // carries the certified gap.
    let trace = fs::read_to_string(out_dir.join("trace.csv")).unwrap();
    let last: Vec<&str> = trace.lines().last().unwrap().split(',').collect();
    let iterations: usize = last[0].parse().unwrap();
    let gap: f64 = last[3].parse().unwrap();
    assert!(iterations > 10, "CLI override should extend the run");
    assert!(gap <= 1e-7, "final gap {gap} should meet the tolerance");
}

#[test]
fn every_artifact_is_byte_identical_across_reruns() {
    let dir = TempDir::new().unwrap();
    let config_path = dir.path().join("config.json");
    fs::write(
        &config_path,
        r#"{
            "seed": 11,
            "dictionary": {"kind": "rows-columns", "n1": 8, "n2": 8},
            "density": {"mask_fraction": 0.05},
            "solver": {"max_iters": 3000, "gap_tol": 1e-4, "trace_every": 50},
            "sampling": {"ratio": 0.35},
            "reconstruction": {"iterations": 100}
        }"#,
    )
    .unwrap();

    let run_pipeline = |out_dir: &Path| {
        let steps: [&[&str]; 6] = [
            &["build-dict"],
            &["make-density"],
            &["solve"],
            &["sample"],
            &["coverage", "--ndraws", "20000"],
            &["reconstruct"],
        ];
        for step in steps {
            let mut args = vec![
                "--config",
                path_str(&config_path),
                "--output-dir",
                path_str(out_dir),
            ];
            args.extend_from_slice(step);
            assert_success(&run(&args), step[0]);
        }
    };

    let first = dir.path().join("a");
    let second = dir.path().join("b");
    run_pipeline(&first);
    run_pipeline(&second);

    let names = file_names(&first);
    assert_eq!(
        names,
        file_names(&second),
        "reruns should write the same files"
    );
    for expected in [
        "provenance.json",
        "dictionary.txt",
        "density.txt",
        "weights.txt",
        "trace.csv",
        "scheme.txt",
        "scheme_mask.pgm",
        "coverage.csv",
        "coverage.pgm",
        "reconstruction.f32",
        "reconstruction.f32.json",
        "reconstruction.pgm",
        "psnr.csv",
    ] {
        assert!(names.contains(expected), "pipeline should write {expected}");
    }

    for name in &names {
        let bytes_first = fs::read(first.join(name)).unwrap();
        let bytes_second = fs::read(second.join(name)).unwrap();
        if name == "provenance.json" {
            // The provenance record hashes the effective configuration,
            // which includes the (differing) output directory.
            continue;
        }
        if name == "trace.csv" {
            assert_eq!(
                strip_seconds_column(&bytes_first),
                strip_seconds_column(&bytes_second),
                "trace should be identical apart from wall-clock times"
            );
        } else {
            assert_eq!(
                bytes_first, bytes_second,
                "artifact {name} differs between reruns"
            );
        }
    }
}

#[test]
fn benchmark_sweeps_every_cell_and_respects_the_thread_cap() {
    let dir = TempDir::new().unwrap();
    let config_path = dir.path().join("config.json");
    fs::write(
        &config_path,
        r#"{
            "seed": 5,
            "dictionary": {"kind": "lines", "n1": 16, "n2": 16},
            "density": {"mask_fraction": 0.02},
            "solver": {"max_iters": 400, "gap_tol": 1e-3},
            "reconstruction": {"iterations": 60}
        }"#,
    )
    .unwrap();

    let run_benchmark = |out_dir: &Path| {
        let output = run_with_env(
            &[
                "--config",
                path_str(&config_path),
                "--output-dir",
                path_str(out_dir),
                "benchmark",
                "--ratios",
                "0.3,0.4",
                "--seeds",
                "2",
            ],
            &[("BLOCKSAMPLER_THREADS", "1")],
        );
        assert_success(&output, "benchmark");
        fs::read(out_dir.join("benchmark.csv")).unwrap()
    };

    let first = run_benchmark(&dir.path().join("a"));
    let second = run_benchmark(&dir.path().join("b"));
    assert_eq!(first, second, "benchmark table should be deterministic");

    let table = String::from_utf8(first).unwrap();
    let mut lines = table.lines();
    assert_eq!(lines.next(), Some("scheme,ratio,seed,psnr"));
    let rows: Vec<Vec<String>> = lines
        .map(|line| line.split(',').map(str::to_string).collect())
        .collect();
    // 2 ratios x 2 seeds x 3 scheme families.
    assert_eq!(rows.len(), 12, "one table row per benchmark cell");
    for family in ["block", "radial-random", "radial-golden"] {
        for ratio in ["0.3", "0.4"] {
            let count = rows
                .iter()
                .filter(|row| row[0] == family && row[1] == ratio)
                .count();
            assert_eq!(
                count, 2,
                "family {family} at ratio {ratio} should run per seed"
            );
        }
    }
    for row in &rows {
        let psnr: f64 = row[3].parse().unwrap();
        assert!(
            psnr.is_finite() && psnr > 0.0,
            "PSNR should be a positive decibel value"
        );
    }
}
