use std::path::Path;
use std::process::{Command, Output};

fn spgomp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spgomp"))
        .args(args)
        .output()
        .expect("spawn spgomp")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn recover_identity_instance() {
    let dir = tempfile::tempdir().unwrap();
    let phi = write(dir.path(), "phi.csv", "1,0,0,0\n0,1,0,0\n0,0,1,0\n0,0,0,1\n");
    let y = write(dir.path(), "y.csv", "0,3,0,-1\n");
    let full = dir.path().join("result.json");
    let out = spgomp(&[
        "recover", "--phi", &phi, "--y", &y, "--alg", "gomp", "--N", "2", "--K", "2", "--out",
        full.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["support"], serde_json::json!([1, 3]));
    assert_eq!(v["x_hat"], serde_json::json!([0.0, 3.0, 0.0, -1.0]));
    assert_eq!(v["iterations"], 1);
    let saved: serde_json::Value = serde_json::from_slice(&std::fs::read(full).unwrap()).unwrap();
    assert_eq!(saved["traces"].as_array().unwrap().len(), 1);

    for alg in ["omp", "cosamp"] {
        let out = spgomp(&["recover", "--phi", &phi, "--y", &y, "--alg", alg, "--K", "2"]);
        assert_eq!(out.status.code(), Some(0), "{alg}");
        assert_eq!(json(&out)["support"], serde_json::json!([1, 3]));
    }
}

#[test]
fn recover_dimension_mismatch_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let phi = write(dir.path(), "phi.csv", "1,0\n0,1\n");
    let y = write(dir.path(), "y.csv", "1,2,3\n");
    let out = spgomp(&["recover", "--phi", &phi, "--y", &y, "--K", "1"]);
    assert_eq!(out.status.code(), Some(3));

    let ragged = write(dir.path(), "ragged.csv", "1,2\n3\n");
    assert_eq!(spgomp(&["rip", "--phi", &ragged, "--K", "1"]).status.code(), Some(3));
    let text = write(dir.path(), "text.csv", "1,abc\n");
    assert_eq!(spgomp(&["rip", "--phi", &text, "--K", "1"]).status.code(), Some(3));
}

#[test]
fn bad_arguments_exit_2() {
    assert_eq!(spgomp(&["bound", "--N", "2"]).status.code(), Some(2));
    assert_eq!(spgomp(&["bound", "--N", "0", "--K", "2"]).status.code(), Some(2));
    assert_eq!(spgomp(&["nonsense"]).status.code(), Some(2));
    assert_eq!(spgomp(&["bench", "--signal", "laplace"]).status.code(), Some(2));
    assert_eq!(
        spgomp(&["rip", "--phi", "/nonexistent/phi.csv", "--K", "1"]).status.code(),
        Some(2)
    );
}

#[test]
fn rip_reports_delta_and_support() {
    let dir = tempfile::tempdir().unwrap();
    let rho: f64 = 0.3;
    let phi = write(
        dir.path(),
        "phi.csv",
        &format!("1,{rho}\n0,{}\n", (1.0 - rho * rho).sqrt()),
    );
    let out = spgomp(&["rip", "--phi", &phi, "--K", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!((v["delta"].as_f64().unwrap() - 0.3).abs() <= 1e-12);
    assert_eq!(v["argmax_support"], serde_json::json!([0, 1]));
}

#[test]
fn rip_enumeration_too_large_exits_4() {
    let dir = tempfile::tempdir().unwrap();
    let row = vec!["0.5"; 40].join(",");
    let body = std::iter::repeat_n(row, 12).collect::<Vec<_>>().join("\n");
    let phi = write(dir.path(), "wide.csv", &body);
    let out = spgomp(&["rip", "--phi", &phi, "--K", "10"]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn bound_lists_thresholds() {
    let out = spgomp(&["bound", "--N", "3", "--K", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let overall = v
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == "gomp_exact_recovery")
        .unwrap();
    assert_eq!(overall["order"], 2);
    assert_eq!(overall["threshold"], 0.5);
}

#[test]
fn flops_closed_form_and_exact_parts() {
    let out = spgomp(&["flops", "--N", "1", "--m", "2", "--n", "4", "--S", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["total_approx"], 22);
    assert_eq!(v["iterations"][0]["residual_update"], 4);
}

#[test]
fn bench_same_seed_same_csv() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let path = dir.path().join(name);
        let out = spgomp(&[
            "bench", "--m", "32", "--n", "64", "--N", "3", "--kmin", "4", "--kmax", "12", "--kstep",
            "4", "--trials", "15", "--signal", "pam", "--algs", "gomp,omp,cosamp", "--seed", "9",
            "--format", "csv", "--out", path.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0));
        std::fs::read_to_string(path)
            .unwrap()
            .lines()
            .map(|l| l.rsplit_once(',').unwrap().0.to_owned())
            .collect::<Vec<_>>()
    };
    let a = run("a.csv");
    assert_eq!(a, run("b.csv"));
    assert_eq!(
        a[0],
        "algorithm,K,success_frequency,mean_iterations,mean_modeled_flops"
    );
    assert_eq!(a.len(), 1 + 3 * 3);
}

#[test]
fn bench_json_to_stdout() {
    let out = spgomp(&[
        "bench", "--m", "16", "--n", "32", "--N", "2", "--kmin", "2", "--kmax", "2", "--trials",
        "3", "--algs", "gomp", "--format", "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v.as_array().unwrap().len(), 1);
    assert_eq!(v[0]["algorithm"], "gomp");
    assert_eq!(v[0]["K"], 2);
}
