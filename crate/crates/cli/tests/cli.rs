//! End-to-end tests of the binary surface: formats, exit codes, and
//! reproducibility of outputs.

use std::path::Path;
use std::process::{Command, Output};

fn mlent(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mlent"))
        .args(args)
        .env_remove("MLENT_SEED")
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    assert!(
        out.stderr.is_empty(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

/// Minimal structural validation against the shipped state schema.
fn assert_valid_state_file(value: &serde_json::Value) {
    let dims = value["dims"].as_array().expect("dims array");
    assert!(!dims.is_empty() && dims.iter().all(|d| d.as_u64().is_some()));
    let total: u64 = dims.iter().map(|d| d.as_u64().unwrap()).product();
    let amps = value["amps"].as_array().expect("amps array");
    assert_eq!(amps.len() as u64, total);
    for pair in amps {
        let pair = pair.as_array().expect("re/im pair");
        assert_eq!(pair.len(), 2);
        assert!(pair.iter().all(|x| x.as_f64().is_some()));
    }
}

#[test]
fn gen_writes_state_files_for_every_name() {
    let dir = std::env::temp_dir().join(format!("mlent-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    for (name, extra) in [
        ("bell", vec![]),
        ("maxent", vec!["--d", "4"]),
        ("ghz", vec!["--n", "3", "--d", "6"]),
        ("example3", vec![]),
        ("xi1", vec![]),
        ("xi2", vec![]),
        ("ame6", vec![]),
        ("chain4x4", vec![]),
        ("star", vec!["--n", "4", "--d", "2"]),
    ] {
        let path = dir.join(format!("{name}.json"));
        let mut args = vec!["gen", name];
        args.extend(extra);
        let out_arg = path.to_str().unwrap().to_string();
        args.extend(["--out", &out_arg]);
        let out = mlent(&args);
        assert!(out.status.success(), "gen {name} failed");
        let text = std::fs::read_to_string(&path).unwrap();
        assert_valid_state_file(&serde_json::from_str(&text).unwrap());
    }
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn gen_without_out_prints_the_state() {
    let out = mlent(&["gen", "bell"]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_valid_state_file(&value);
    assert_eq!(value["dims"], serde_json::json!([2, 2]));
}

#[test]
fn gen_graph_round_trip() {
    let dir = std::env::temp_dir().join(format!("mlent-graph-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let graph = dir.join("g.json");
    std::fs::write(
        &graph,
        r#"{"n":2,"dim":2,"edges":[[0,1,"1"]],"hyperedges":[]}"#,
    )
    .unwrap();
    let state = dir.join("s.json");
    let out = mlent(&[
        "gen",
        "graph",
        "--graph",
        graph.to_str().unwrap(),
        "--out",
        state.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let value: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&state).unwrap()).unwrap();
    assert_valid_state_file(&value);
    // controlled-Z on |++>: last amplitude negative
    assert!((value["amps"][3][0].as_f64().unwrap() + 0.5).abs() < 1e-12);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn unknown_generator_exits_one() {
    let out = mlent(&["gen", "nonsense"]);
    assert_eq!(out.status.code(), Some(1));
}

fn write_state(dir: &Path, name: &str) -> String {
    std::fs::create_dir_all(dir).unwrap();
    let path = dir.join(format!("{name}.json"));
    let out = mlent(&["gen", name, "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    path.to_str().unwrap().to_string()
}

#[test]
fn schmidt_reports_flat_spectrum_for_psi4() {
    let dir = std::env::temp_dir().join(format!("mlent-schmidt-{}", std::process::id()));
    let psi4 = write_state(&dir, "maxent");
    let out = mlent(&["schmidt", "--state", &psi4, "--cut", "0|1"]);
    assert!(out.status.success());
    let value = stdout_json(&out);
    for c in value["coeffs"].as_array().unwrap() {
        assert!((c.as_f64().unwrap() - 0.5).abs() < 1e-12);
    }
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn schmidt_output_is_reproducible_up_to_wall_time() {
    let dir = std::env::temp_dir().join(format!("mlent-repro-{}", std::process::id()));
    let state = write_state(&dir, "example3");
    let strip = |out: &Output| {
        let mut v = stdout_json(out);
        v["manifest"].as_object_mut().unwrap().remove("wall_ms");
        v
    };
    let a = mlent(&["schmidt", "--state", &state, "--cut", "0|1,2", "--seed", "5"]);
    let b = mlent(&["schmidt", "--state", &state, "--cut", "0|1,2", "--seed", "5"]);
    assert_eq!(strip(&a), strip(&b));
    let manifest = &stdout_json(&a)["manifest"];
    assert_eq!(manifest["command"], "schmidt");
    assert_eq!(manifest["seed"], 5);
    assert!(manifest["input_digests"][0]["sha256"].as_str().unwrap().len() == 64);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn check_exit_codes_separate_verdicts_from_errors() {
    let dir = std::env::temp_dir().join(format!("mlent-check-{}", std::process::id()));
    let psi4 = write_state(&dir, "maxent");
    let xi1 = write_state(&dir, "xi1");

    let out = mlent(&["check", "--state", &psi4, "--cut", "0|1", "--shape", "2x2"]);
    assert_eq!(out.status.code(), Some(0));
    let value = stdout_json(&out);
    assert_eq!(value["decomposable"], true);
    assert!(value["certificate"]["arrangement"].is_array());

    let out = mlent(&["check", "--state", &xi1, "--cut", "0|1", "--shape", "2x2"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stdout_json(&out)["decomposable"], false);

    let out = mlent(&["check", "--state", "missing.json", "--cut", "0|1", "--shape", "2x2"]);
    assert_eq!(out.status.code(), Some(1));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn max_overlap_matches_known_constant() {
    let dir = std::env::temp_dir().join(format!("mlent-mo-{}", std::process::id()));
    let xi1 = write_state(&dir, "xi1");
    let out = mlent(&["max-overlap", "--state", &xi1, "--cut", "0|1", "--shape", "2x2"]);
    assert!(out.status.success());
    let value = stdout_json(&out);
    let want = ((3.0 + 5f64.sqrt()) / 6.0).sqrt();
    assert!((value["value"].as_f64().unwrap() - want).abs() < 1e-9);

    // dedupe path gives the same answer
    let out2 = mlent(&[
        "max-overlap", "--state", &xi1, "--cut", "0|1", "--shape", "2x2", "--dedupe",
    ]);
    let v2 = stdout_json(&out2);
    assert!((v2["value"].as_f64().unwrap() - want).abs() < 1e-9);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn witness_detects_xi1_and_clears_psi4() {
    let dir = std::env::temp_dir().join(format!("mlent-wit-{}", std::process::id()));
    let xi1 = write_state(&dir, "xi1");
    let psi4 = write_state(&dir, "maxent");

    let out = mlent(&["witness", "--xi", "xi1", "--rho", &xi1]);
    assert_eq!(out.status.code(), Some(0));
    let value = stdout_json(&out);
    assert_eq!(value["violated"], true);
    assert!((value["alpha_sq"].as_f64().unwrap() - (3.0 + 5f64.sqrt()) / 6.0).abs() < 1e-9);

    let out = mlent(&["witness", "--xi", "xi1", "--rho", &psi4]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stdout_json(&out)["violated"], false);

    // mixtures are accepted
    let mix = dir.join("mix.json");
    let xi1_amps: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&xi1).unwrap()).unwrap();
    std::fs::write(
        &mix,
        serde_json::json!({
            "dims": [4, 4],
            "mixture": [
                {"weight": 0.9, "amps": xi1_amps["amps"]},
                {"weight": 0.1, "amps": serde_json::from_str::<serde_json::Value>(
                    &std::fs::read_to_string(&psi4).unwrap()).unwrap()["amps"]},
            ]
        })
        .to_string(),
    )
    .unwrap();
    let out = mlent(&["witness", "--xi", "xi1", "--rho", mix.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "0.9 weight keeps the violation");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn table1_all_rows_match_closed_forms() {
    let out = mlent(&["table1"]);
    assert!(out.status.success());
    let value = stdout_json(&out);
    let rows = value["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 12);
    for row in rows {
        assert!(row["delta"].as_f64().unwrap() < 1e-9, "{row}");
    }
}

#[test]
fn tableaux_counts_and_listing() {
    let out = mlent(&["tableaux", "--shape", "2x2", "--count-only"]);
    let value = stdout_json(&out);
    assert_eq!(value["count"], "2");
    assert_eq!(value["boundary_count"], "2");

    let out = mlent(&["tableaux", "--shape", "2x3"]);
    let value = stdout_json(&out);
    assert_eq!(value["count"], 5);
    assert_eq!(value["tableaux"].as_array().unwrap().len(), 5);

    // big shapes are fine with --count-only, refused for listing
    let out = mlent(&["tableaux", "--shape", "7x7", "--count-only"]);
    assert!(out.status.success());
    let out = mlent(&["tableaux", "--shape", "7x7"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn seesaw_finds_psi4_decomposition_and_exit_codes() {
    let dir = std::env::temp_dir().join(format!("mlent-ss-{}", std::process::id()));
    let psi4 = write_state(&dir, "maxent");
    let out = mlent(&[
        "seesaw", "--state", &psi4, "--factorization", "2x2,2x2",
        "--restarts", "6", "--iters", "300", "--seed", "7",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let value = stdout_json(&out);
    assert!(value["best_overlap"].as_f64().unwrap() > 1.0 - 1e-6);
    assert!(value["certificate"]["factors"].is_array());

    let xi1 = write_state(&dir, "xi1");
    let out = mlent(&[
        "seesaw", "--state", &xi1, "--factorization", "2x2,2x2",
        "--restarts", "6", "--iters", "300", "--seed", "7",
    ]);
    assert_eq!(out.status.code(), Some(2), "extremal state stays below 1");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn classify_chain_is_mme_bidecomposable() {
    let dir = std::env::temp_dir().join(format!("mlent-cls-{}", std::process::id()));
    let chain = write_state(&dir, "chain4x4");
    let out = mlent(&[
        "classify", "--state", &chain, "--restarts", "8", "--iters", "250", "--seed", "7",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let value = stdout_json(&out);
    assert_eq!(value["verdict"], "MME_BIDECOMPOSABLE");
    let cuts = value["cuts"].as_array().unwrap();
    assert_eq!(cuts.len(), 7);
    assert!(cuts.iter().all(|c| c["decomposable"] == true));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn reproduce_eq8_passes_and_text_format_renders() {
    let out = mlent(&["reproduce", "eq8"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["pass"], true);

    let out = mlent(&["--format", "text", "reproduce", "eq8"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("overall: pass"), "{text}");

    let out = mlent(&["reproduce", "bogus"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn seed_env_var_is_honored() {
    let out = Command::new(env!("CARGO_BIN_EXE_mlent"))
        .args(["tableaux", "--shape", "2x2", "--count-only"])
        .env("MLENT_SEED", "99")
        .output()
        .unwrap();
    let value: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(value["manifest"]["seed"], 99);
}
