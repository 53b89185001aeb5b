//! End-to-end tests of the `uc-radius` binary: JSON shapes, exit codes,
//! determinism, the disk cache and the job-file interface.

use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_uc-radius"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

const RADIUS_QB: &[&str] = &[
    "radius", "--family", "qbessel", "--kind", "2", "--nu", "1.0", "--q", "0.5", "--norm", "g",
];

#[test]
fn radius_emits_schema_and_agreeing_routes() {
    let v = stdout_json(&run(RADIUS_QB));
    assert_eq!(v["schema"], "uc-radius/1");
    let direct = v["direct"]["radius"].as_f64().unwrap();
    let zero_sum = v["zero_sum"]["radius"].as_f64().unwrap();
    let agreement = v["agreement"].as_f64().unwrap();
    assert!(direct > 0.0 && direct < v["direct"]["domain_upper"].as_f64().unwrap());
    assert!((direct - zero_sum).abs() < 1e-9);
    assert!(agreement < 1e-9);
    assert_eq!(v["direct"]["method"], "direct_eq");
    assert_eq!(v["zero_sum"]["method"], "zero_sum");
}

#[test]
fn invalid_parameters_exit_with_code_1() {
    let out = run(&[
        "radius", "--family", "qbessel", "--kind", "2", "--nu", "-2", "--q", "0.5", "--norm", "g",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
    assert!(!out.stderr.is_empty());

    let out = run(&["radius", "--family", "nosuch", "--norm", "g"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn repeated_runs_are_byte_identical() {
    let a = run(RADIUS_QB);
    let b = run(RADIUS_QB);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);

    let zeros = &[
        "zeros", "--family", "wright", "--rho", "1.0", "--beta", "1.5", "--which", "function",
        "--count", "6",
    ];
    assert_eq!(run(zeros).stdout, run(zeros).stdout);
}

#[test]
fn disk_cache_reproduces_fresh_results() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();

    let fresh = run(RADIUS_QB);
    let mut with_flag = RADIUS_QB.to_vec();
    with_flag.extend(["--cache-dir", cache]);
    let cold = run(&with_flag);
    assert!(cold.status.success());
    assert!(
        std::fs::read_dir(dir.path()).unwrap().count() > 0,
        "cache dir was populated"
    );
    let warm = run(&with_flag);
    assert_eq!(fresh.stdout, cold.stdout);
    assert_eq!(cold.stdout, warm.stdout);

    // the env var form selects the same cache
    let env_run = bin()
        .args(RADIUS_QB)
        .env("UC_RADIUS_CACHE", cache)
        .output()
        .unwrap();
    assert_eq!(env_run.stdout, fresh.stdout);
}

#[test]
fn corrupt_cache_entries_are_recomputed() {
    let dir = tempfile::tempdir().unwrap();
    let mut args = RADIUS_QB.to_vec();
    let cache = dir.path().to_str().unwrap();
    args.extend(["--cache-dir", cache]);
    let cold = run(&args);
    for entry in std::fs::read_dir(dir.path()).unwrap() {
        std::fs::write(entry.unwrap().path(), b"not json").unwrap();
    }
    let rebuilt = run(&args);
    assert_eq!(cold.stdout, rebuilt.stdout);
}

#[test]
fn job_file_matches_flag_invocation() {
    let dir = tempfile::tempdir().unwrap();
    let job = dir.path().join("job.json");
    std::fs::write(
        &job,
        serde_json::json!({
            "command": "radius",
            "family": "qbessel",
            "kind": 2,
            "nu": 1.0,
            "q": 0.5,
            "norm": "g",
            "zero_count": 12
        })
        .to_string(),
    )
    .unwrap();
    let via_job = run(&["--job", job.to_str().unwrap()]);
    assert_eq!(via_job.stdout, run(RADIUS_QB).stdout);
}

#[test]
fn verify_passes_and_reports() {
    let v = stdout_json(&run(&[
        "verify", "--family", "wright", "--rho", "1.0", "--beta", "1.5", "--norm", "h",
    ]));
    assert_eq!(v["pass"], true);
    assert!(v["disagreement"].as_f64().unwrap() < 1e-6);
}

#[test]
fn sweep_emits_ordered_csv() {
    let out = run(&[
        "sweep", "--family", "qbessel", "--kinds", "2,3", "--nus", "0.5,1.0", "--qs", "0.3",
        "--norms", "g,h",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines[0],
        "family,kind,norm,nu|rho,q|beta,radius,residual,method_agreement,domain_upper"
    );
    assert_eq!(lines.len(), 1 + 8); // header + kinds x nus x qs x norms
                                    // deterministic row order: kind-major, then nu, then q, then norm
    assert!(lines[1].starts_with("qbessel,2,g,0.5,0.3,"));
    assert!(lines[4].starts_with("qbessel,2,h,1,0.3,"));
    assert!(lines[5].starts_with("qbessel,3,g,0.5,0.3,"));
    for row in &lines[1..] {
        let fields: Vec<&str> = row.split(',').collect();
        assert_eq!(fields.len(), 9);
        let radius: f64 = fields[5].parse().unwrap();
        let agreement: f64 = fields[7].parse().unwrap();
        assert!(radius > 0.0 && agreement < 1e-9);
    }
}

#[test]
fn eval_matches_the_library() {
    let v = stdout_json(&run(&[
        "eval", "--family", "wright", "--rho", "1.0", "--beta", "1.5", "--norm", "g", "--z", "0.25",
    ]));
    // g(z) = sin(2z)/2 for (rho, beta) = (1, 3/2)
    let expect = (2.0_f64 * 0.25).sin() / 2.0;
    assert!((v["value"].as_f64().unwrap() - expect).abs() < 1e-14);
}
