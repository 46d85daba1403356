use lambda_cavity::squeezing::DistributionMode;
use lambda_cavity_cli::{preset, rows_to_csv, run_sweep, write_csv, RunError};

/// Small, fast stand-in scenario: fig2b physics over a short horizon with
/// both output families on.
fn small_config() -> lambda_cavity_cli::RunConfig {
    let mut cfg = preset("fig2b-const").unwrap();
    cfg.tau_max = 1.0;
    cfg.dtau_entropy = 0.25;
    cfg.dtau_squeezing = 0.5;
    cfg.outputs.squeezing = true;
    cfg
}

#[test]
fn rows_merge_the_two_time_grids() {
    let result = run_sweep(&small_config()).unwrap();
    // entropy grid {0, .25, .5, .75, 1}; squeezing grid {0, .5, 1} coincides
    assert_eq!(result.rows.len(), 5);
    for (k, row) in result.rows.iter().enumerate() {
        assert!(row.dem.is_some());
        assert!(row.norm_error.is_some());
        let expect_sq = k % 2 == 0;
        assert_eq!(row.ex.is_some(), expect_sq, "row {k}");
        assert_eq!(row.ep.is_some(), expect_sq, "row {k}");
    }
    let taus: Vec<f64> = result.rows.iter().map(|r| r.tau).collect();
    assert!(taus.windows(2).all(|w| w[0] < w[1]), "taus not increasing: {taus:?}");
}

#[test]
fn unaligned_grids_interleave_instead_of_merging() {
    let mut cfg = small_config();
    cfg.tau_max = 0.6;
    cfg.dtau_entropy = 0.2; // {0, .2, .4, .6}
    cfg.dtau_squeezing = 0.3; // {0, .3, .6}
    let result = run_sweep(&cfg).unwrap();
    // union: 0, .2, .3, .4, .6 — only the endpoints coincide
    assert_eq!(result.rows.len(), 5);
    let both: Vec<bool> = result.rows.iter().map(|r| r.dem.is_some() && r.ex.is_some()).collect();
    assert_eq!(both, [true, false, false, false, true]);
}

#[test]
fn squeezing_only_runs_have_no_entropy_rows() {
    let mut cfg = preset("fig3b-const").unwrap();
    cfg.tau_max = 0.5;
    cfg.dtau_squeezing = 0.25;
    let result = run_sweep(&cfg).unwrap();
    assert_eq!(result.rows.len(), 3);
    assert!(result.rows.iter().all(|r| r.dem.is_none() && r.ex.is_some()));
}

#[test]
fn csv_schema_and_formatting_are_stable() {
    let result = run_sweep(&small_config()).unwrap();
    let csv = rows_to_csv(&result.rows);
    let mut lines = csv.lines();
    assert_eq!(lines.next().unwrap(), "tau,dem,EX,EP,norm_error");
    for line in lines {
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields.len(), 5);
        for f in fields {
            if f.is_empty() {
                continue;
            }
            // fixed 12-significant-digit scientific formatting
            let (mantissa, _exp) = f.split_once('e').expect("scientific notation");
            let digits: String = mantissa.chars().filter(|c| c.is_ascii_digit()).collect();
            assert_eq!(digits.len(), 12, "field {f}");
            f.parse::<f64>().unwrap();
        }
    }
    // second row (tau=0.25) carries no squeezing values
    let row1 = csv.lines().nth(2).unwrap();
    let fields: Vec<&str> = row1.split(',').collect();
    assert!(fields[2].is_empty() && fields[3].is_empty());
    assert!(!fields[1].is_empty() && !fields[4].is_empty());
}

#[test]
fn repeated_runs_are_byte_identical() {
    let cfg = small_config();
    let a = rows_to_csv(&run_sweep(&cfg).unwrap().rows);
    let b = rows_to_csv(&run_sweep(&cfg).unwrap().rows);
    assert_eq!(a, b);
}

#[test]
fn first_row_is_the_pure_initial_state() {
    let result = run_sweep(&small_config()).unwrap();
    let first = &result.rows[0];
    assert_eq!(first.tau, 0.0);
    assert!(first.dem.unwrap() < 1e-8);
    assert!(first.norm_error.unwrap() < 1e-6);
}

#[test]
fn failing_runs_leave_no_output_file() {
    // schrodinger densities without numeric frequencies fail mid-sweep
    let mut cfg = small_config();
    cfg.dist_mode = DistributionMode::Schrodinger;
    let err = run_sweep(&cfg).unwrap_err();
    assert!(matches!(err, RunError::Squeezing(_)));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.csv");
    // the writer is only ever invoked with complete results; emulate the
    // caller contract: on error nothing is written
    if let Ok(result) = run_sweep(&cfg) {
        write_csv(&path, &result.rows).unwrap();
    }
    assert!(!path.exists());
    assert!(!path.with_extension("csv.tmp").exists());
}

#[test]
fn write_csv_creates_the_file_atomically() {
    let cfg = small_config();
    let result = run_sweep(&cfg).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("trace.csv");
    write_csv(&path, &result.rows).unwrap();
    let written = std::fs::read_to_string(&path).unwrap();
    assert_eq!(written, rows_to_csv(&result.rows));
    assert!(!path.with_extension("csv.tmp").exists());
}

#[test]
fn summary_reports_solver_health() {
    let result = run_sweep(&small_config()).unwrap();
    let s = result.summary;
    assert_eq!(s.rows, 5);
    assert!(s.max_scaled_residual < 1e-9);
    assert!(s.max_norm_error < 1e-6);
    assert!(s.max_block_norm_error < 1e-8);
    assert_eq!(s.degenerate_blocks, 0);
}
