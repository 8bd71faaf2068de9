//! In-process exercises of the command-line surface: `run_from` is called
//! directly, so exit codes, artifact files, and determinism are checked
//! without spawning binaries.

use std::fs;
use std::path::Path;

use waveback::app::run_from;
use waveback::csvio::{write_trace_csv, TraceMeta};
use waveback::synthetic::SampledTrace;

fn run(dir: &Path, config: &str, extra: &[&str]) -> i32 {
    let config_path = dir.join("config.json");
    fs::write(&config_path, config).unwrap();
    let mut args = vec![
        "waveback".to_string(),
        "--config".into(),
        config_path.display().to_string(),
        "--out".into(),
        dir.display().to_string(),
        "--no-timestamp".into(),
    ];
    args.extend(extra.iter().map(|s| s.to_string()));
    run_from(args)
}

fn data_rows(text: &str) -> Vec<&str> {
    text.lines().filter(|l| !l.starts_with('#') && !l.is_empty()).skip(1).collect()
}

#[test]
fn kernel_eval_hits_the_cone_tip_value() {
    let dir = tempfile::tempdir().unwrap();
    // Single grid point (x, t) = (0, 1): the kernel there is 1/(4√(πhc)).
    let config = r#"{
        "kernel": {"y0": 1.0, "c": 1.0, "h": 0.05},
        "grid": {"x_min": 0.0, "x_max": 0.0, "nx": 1, "t_min": 1.0, "t_max": 1.0, "nt": 1}
    }"#;
    assert_eq!(run(dir.path(), config, &["kernel-eval"]), 0);
    let text = fs::read_to_string(dir.path().join("kernel_eval.csv")).unwrap();
    assert!(!text.contains("generated_unix_seconds"), "--no-timestamp must strip the stamp");
    let rows = data_rows(&text);
    assert_eq!(rows.len(), 1);
    let value: f64 = rows[0].split(',').nth(2).unwrap().parse().unwrap();
    let exact = 1.0 / (4.0 * (std::f64::consts::PI * 0.05).sqrt());
    assert!((value - exact).abs() <= 1e-10 * exact, "got {value}, want {exact}");
}

#[test]
fn kernel_eval_empty_grid_writes_header_only() {
    let dir = tempfile::tempdir().unwrap();
    let config = r#"{"grid": {"nx": 0, "nt": 0}}"#;
    assert_eq!(run(dir.path(), config, &["kernel-eval"]), 0);
    let text = fs::read_to_string(dir.path().join("kernel_eval.csv")).unwrap();
    assert!(text.contains("x,t,K"));
    assert!(data_rows(&text).is_empty());
}

#[test]
fn kernel_eval_exponent_overflow_exits_3_without_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let config = r#"{
        "kernel": {"h": 1e-6},
        "grid": {"x_min": 0.0, "x_max": 0.0, "nx": 1, "t_min": 0.0, "t_max": 0.0, "nt": 1}
    }"#;
    assert_eq!(run(dir.path(), config, &["kernel-eval"]), 3);
    assert!(!dir.path().join("kernel_eval.csv").exists(), "failed runs must not leave artifacts");
}

#[test]
fn kernel_eval_output_is_symmetric_in_x_and_t() {
    let dir = tempfile::tempdir().unwrap();
    let config = r#"{
        "grid": {"x_min": -1.0, "x_max": 1.0, "nx": 3, "t_min": -0.5, "t_max": 0.5, "nt": 3}
    }"#;
    assert_eq!(run(dir.path(), config, &["kernel-eval"]), 0);
    let text = fs::read_to_string(dir.path().join("kernel_eval.csv")).unwrap();
    // Key coordinates by bit pattern, folding -0.0 onto +0.0.
    let key = |v: f64| if v == 0.0 { 0.0f64.to_bits() } else { v.to_bits() };
    let mut table = std::collections::HashMap::new();
    for row in data_rows(&text) {
        let cells: Vec<f64> = row.split(',').map(|c| c.parse().unwrap()).collect();
        table.insert((key(cells[0]), key(cells[1])), cells[2]);
    }
    for (&(xb, tb), &k) in &table {
        let (x, t) = (f64::from_bits(xb), f64::from_bits(tb));
        let mirror_x = table[&(key(-x), tb)];
        let mirror_t = table[&(xb, key(-t))];
        assert!((k - mirror_x).abs() <= 1e-14 * k.abs().max(1e-300), "x symmetry at ({x},{t})");
        assert!((k - mirror_t).abs() <= 1e-14 * k.abs().max(1e-300), "t symmetry at ({x},{t})");
    }
}

#[test]
fn thread_count_does_not_change_output_bytes() {
    let kernel_config = r#"{
        "grid": {"x_min": -1.5, "x_max": 1.5, "nx": 6, "t_min": -0.9, "t_max": 0.9, "nt": 6}
    }"#;
    let recon_config = r#"{
        "h_list": [0.1, 0.05],
        "quad": {"nodes_t": 16, "nodes_x": 16, "nodes_s": 16, "refinement": 1, "rel_tol": 1e-6}
    }"#;
    let mut kernel_bytes = Vec::new();
    let mut report_bytes = Vec::new();
    for threads in ["1", "4"] {
        let dir = tempfile::tempdir().unwrap();
        assert_eq!(run(dir.path(), kernel_config, &["--threads", threads, "kernel-eval"]), 0);
        kernel_bytes.push(fs::read(dir.path().join("kernel_eval.csv")).unwrap());
        let dir = tempfile::tempdir().unwrap();
        assert_eq!(run(dir.path(), recon_config, &["--threads", threads, "reconstruct"]), 0);
        report_bytes.push(fs::read(dir.path().join("report.csv")).unwrap());
    }
    assert_eq!(kernel_bytes[0], kernel_bytes[1], "kernel-eval must be thread-count invariant");
    assert_eq!(report_bytes[0], report_bytes[1], "reconstruct must be thread-count invariant");
}

#[test]
fn reconstruct_zero_trace_reports_exact_zero() {
    let dir = tempfile::tempdir().unwrap();
    let config = r#"{
        "trace": "zero",
        "h_list": [0.1, 0.05],
        "quad": {"nodes_t": 8, "nodes_x": 8, "nodes_s": 8, "refinement": 1, "rel_tol": 1e-6}
    }"#;
    assert_eq!(run(dir.path(), config, &["reconstruct"]), 0);
    let json: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("report.json")).unwrap()).unwrap();
    assert_eq!(json["report"]["target"], 0.0);
    for entry in json["report"]["entries"].as_array().unwrap() {
        assert_eq!(entry["estimate"], 0.0);
        assert_eq!(entry["status"], "converged");
    }
    let csv = fs::read_to_string(dir.path().join("report.csv")).unwrap();
    assert_eq!(data_rows(&csv).len(), 2);
}

#[test]
fn reconstruct_from_a_too_small_trace_exits_4() {
    let dir = tempfile::tempdir().unwrap();
    // A zero trace covering |x| ≤ 0.9 only; the default aperture needs
    // |x| ≤ D(1) + 0.5 ≈ 1.077.
    let trace = SampledTrace {
        x_min: -0.9,
        dx: 0.3,
        nx: 7,
        t_min: -1.0,
        dt: 0.25,
        nt: 9,
        values: vec![0.0; 63],
    };
    let trace_path = dir.path().join("trace.csv");
    fs::write(&trace_path, write_trace_csv(&trace, &TraceMeta::default(), None)).unwrap();
    let config = format!(r#"{{"trace": {{"csv": {:?}}}}}"#, trace_path.display().to_string());
    assert_eq!(run(dir.path(), &config, &["reconstruct"]), 4);
    assert!(!dir.path().join("report.csv").exists());
}

#[test]
fn reconstruct_picks_the_target_from_probe_metadata() {
    let dir = tempfile::tempdir().unwrap();
    // Tiny forward run writes a trace whose header carries two probe values.
    let fdtd_config = r#"{
        "domain": {"x_halfwidth": 2.0, "height": 2.2, "dx": 0.1, "dt": 0.05, "t_final": 0.5},
        "bump": {"center_x": 0.0, "center_y": 1.0, "radius": 0.4, "transition": 0.4},
        "probes": [[0.0, 0.4], [0.0, 1.0]],
        "trace": {"x_range": [-1.9, 1.9], "t_range": [0.0, 0.5]}
    }"#;
    assert_eq!(run(dir.path(), fdtd_config, &["fdtd"]), 0);
    let trace_path = dir.path().join("trace.csv");
    let trace_text = fs::read_to_string(&trace_path).unwrap();
    assert!(trace_text.contains("# probe:"), "trace header should carry probe annotations");
    assert!(fs::read_to_string(dir.path().join("probes.csv")).unwrap().contains("# probe_0:"));

    // A reconstruction from that file adopts the probe at its own (x0, y0)
    // as the target without any explicit `target` entry. The short run only
    // covers |t| ≤ 0.5 after mirroring, so the aperture height is 0.4.
    let recon_config = |y0: f64| {
        format!(
            r#"{{
                "trace": {{"csv": {:?}}},
                "mirror_time_even": true,
                "aperture": {{"y0": {y0}, "c": 1.0, "epsilon": 0.3, "x0": 0.0, "t0": 0.0}},
                "h_list": [0.05],
                "quad": {{"nodes_t": 16, "nodes_x": 16, "nodes_s": 16,
                          "refinement": 1, "rel_tol": 1e-4}}
            }}"#,
            trace_path.display().to_string()
        )
    };
    let matched = tempfile::tempdir().unwrap();
    assert_eq!(run(matched.path(), &recon_config(0.4), &["reconstruct"]), 0);
    let json: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(matched.path().join("report.json")).unwrap())
            .unwrap();
    // The probe at (0, 0.4) sits outside the bump support, so its recorded
    // initial value — and hence the adopted target — is exactly zero.
    assert_eq!(json["report"]["target"], 0.0);

    // With no probe at the aperture height the target stays unset.
    let unmatched = tempfile::tempdir().unwrap();
    assert_eq!(run(unmatched.path(), &recon_config(0.35), &["reconstruct"]), 0);
    let json: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(unmatched.path().join("report.json")).unwrap())
            .unwrap();
    assert!(json["report"]["target"].is_null());
    assert!(json["report"]["entries"][0]["abs_error"].is_null());
}

#[test]
fn fdtd_cfl_violation_exits_5_and_writes_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let config = r#"{
        "domain": {"x_halfwidth": 2.0, "height": 2.2, "dx": 0.1, "dt": 0.09, "t_final": 0.5}
    }"#;
    assert_eq!(run(dir.path(), config, &["fdtd"]), 5);
    assert!(!dir.path().join("trace.csv").exists());
    assert!(!dir.path().join("probes.csv").exists());
}

#[test]
fn decay_with_empty_band_writes_header_only() {
    let dir = tempfile::tempdir().unwrap();
    let config = r#"{"epsilon": 3.0, "d": 2.0, "h_list": [0.2, 0.1], "nx": 6, "nt": 5}"#;
    assert_eq!(run(dir.path(), config, &["decay"]), 0);
    let text = fs::read_to_string(dir.path().join("decay.csv")).unwrap();
    assert!(text.contains("h,x,t,log_abs_K,bound_rhs,a,envelope"));
    assert!(data_rows(&text).is_empty());
}

#[test]
fn decay_reports_the_analytic_decay_constant() {
    let dir = tempfile::tempdir().unwrap();
    let config = r#"{"h_list": [0.2, 0.1], "nx": 8, "nt": 7}"#;
    assert_eq!(run(dir.path(), config, &["decay"]), 0);
    let text = fs::read_to_string(dir.path().join("decay.csv")).unwrap();
    let rows = data_rows(&text);
    assert!(!rows.is_empty());
    for row in &rows {
        let a: f64 = row.split(',').nth(5).unwrap().parse().unwrap();
        assert_eq!(a, 0.05, "a = c/(4(c²+d²)) for c = 1, d = 2");
    }
}

#[test]
fn kernel_check_with_crippled_quadrature_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    // Four s-nodes and no refinement cannot resolve the inner integral; the
    // dual-representation and Bessel checks must both fail honestly.
    let config = r#"{
        "h_list": [0.1],
        "grid": {"x_min": -2.0, "x_max": 2.0, "nx": 4, "t_min": -0.95, "t_max": 0.95, "nt": 4},
        "quad": {"nodes_t": 8, "nodes_x": 8, "nodes_s": 4, "refinement": 0, "rel_tol": 1e-9}
    }"#;
    assert_eq!(run(dir.path(), config, &["kernel-check"]), 1);
    let json: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("kernel_check.json")).unwrap())
            .unwrap();
    assert_eq!(json["pass"], false);
}

#[test]
fn spectral_without_a_csv_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(run(dir.path(), r#"{}"#, &["spectral"]), 2);
}

#[test]
fn spectral_runs_on_a_forward_trace() {
    let dir = tempfile::tempdir().unwrap();
    let fdtd_config = r#"{
        "domain": {"x_halfwidth": 2.0, "height": 2.2, "dx": 0.1, "dt": 0.05, "t_final": 0.5},
        "bump": {"center_x": 0.0, "center_y": 1.0, "radius": 0.4, "transition": 0.4},
        "trace": {"x_range": [-1.9, 1.9], "t_range": [0.0, 0.5]}
    }"#;
    assert_eq!(run(dir.path(), fdtd_config, &["fdtd"]), 0);
    let trace_path = dir.path().join("trace.csv");
    let config = format!(
        r#"{{"csv": {:?}, "y0": 1.0, "mirror_time_even": true}}"#,
        trace_path.display().to_string()
    );
    assert_eq!(run(dir.path(), &config, &["spectral"]), 0);
    let json: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("spectral.json")).unwrap())
            .unwrap();
    assert!(json["value"].is_number());
}

#[test]
fn malformed_config_json_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(run(dir.path(), r#"{"grid": {"nx": "three"}}"#, &["kernel-eval"]), 2);
    assert_eq!(run(dir.path(), r#"{"grid": {"unknown_key": 1}}"#, &["kernel-eval"]), 2);
}
