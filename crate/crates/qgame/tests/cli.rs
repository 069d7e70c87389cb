//! End-to-end tests of the qgame binary: output contracts, exit codes,
//! determinism, and the JSON round trip.

use std::path::Path;
use std::process::{Command, Output};

fn qgame(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qgame"))
        .args(args)
        .env_remove("QGAME_TOLERANCE")
        .output()
        .expect("binary runs")
}

fn qgame_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qgame"))
        .args(args)
        .env(key, value)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf8 output")
}

fn code(output: &Output) -> i32 {
    output.status.code().expect("exit code")
}

#[test]
fn play_prints_the_published_cell() {
    let out = qgame(&[
        "play", "--spec", "ewl", "--a", "3", "--b", "5", "--c", "1", "--alice", "D", "--bob", "Q",
    ]);
    assert_eq!(code(&out), 0);
    assert!(
        stdout(&out).contains("payoff: (0,5)"),
        "got: {}",
        stdout(&out)
    );
}

#[test]
fn play_on_the_shared_state() {
    let out = qgame(&["play", "--spec", "shared", "--alice", "C", "--bob", "D"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("payoff: (2.5,2.5)"));
}

#[test]
fn play_accepts_the_mixed_strategy_syntax() {
    let out = qgame(&["play", "--spec", "shared", "--alice", "R:1", "--bob", "R:0"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("payoff: (2.5,2.5)"));
}

#[test]
fn play_with_a_custom_spec() {
    let r = "0.7071067811865476";
    let state = format!("{r},0,0,0,0,0,{r},0");
    let out = qgame(&[
        "play", "--spec", "custom", "--state", &state, "--alice", "C", "--bob", "C",
    ]);
    assert_eq!(code(&out), 0);
    assert!(
        stdout(&out).contains("payoff: (2,2)"),
        "got: {}",
        stdout(&out)
    );
}

#[test]
fn sampled_play_is_reproducible_and_close() {
    let args = [
        "play",
        "--spec",
        "shared",
        "--alice",
        "R:0.5",
        "--bob",
        "C",
        "--sampled",
        "--samples",
        "50000",
        "--seed",
        "42",
    ];
    let first = qgame(&args);
    let second = qgame(&args);
    assert_eq!(code(&first), 0);
    assert_eq!(stdout(&first), stdout(&second));
    assert!(stdout(&first).contains("sampled estimate"));
}

#[test]
fn invalid_configuration_exits_2() {
    // unknown strategy label
    assert_eq!(code(&qgame(&["play", "--alice", "Z", "--bob", "C"])), 2);
    // R without a probability
    assert_eq!(code(&qgame(&["play", "--alice", "R", "--bob", "C"])), 2);
    // payoff ordering violated
    assert_eq!(
        code(&qgame(&[
            "play", "--a", "1", "--b", "5", "--c", "3", "--alice", "C", "--bob", "C",
        ])),
        2
    );
    // --seed is only valid in sampled mode (clap usage error)
    assert_eq!(
        code(&qgame(&[
            "play", "--alice", "C", "--bob", "C", "--seed", "1",
        ])),
        2
    );
    // committed mode needs both parameters
    assert_eq!(
        code(&qgame(&["matrix", "--mode", "committed", "--p", "0"])),
        2
    );
    // custom spec needs a state
    assert_eq!(
        code(&qgame(&[
            "play", "--spec", "custom", "--alice", "C", "--bob", "C"
        ])),
        2
    );
    // probabilities out of range
    assert_eq!(code(&qgame(&["play", "--alice", "R:1.5", "--bob", "C"])), 2);
}

#[test]
fn matrix_renders_the_extended_game() {
    let out = qgame(&["matrix", "--spec", "ewl"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("(3,3)"));
    assert!(text.contains("(0,5)"));
    assert!(text.contains("(1,1)"));
}

#[test]
fn committed_matrix_shows_the_commitment_argument() {
    let out = qgame(&[
        "matrix",
        "--mode",
        "committed",
        "--p",
        "0",
        "--q",
        "1",
        "--format",
        "json",
    ]);
    assert_eq!(code(&out), 0);
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let cells = json["cells"].as_array().unwrap();
    // C vs R collapses to the identity pair
    assert!((cells[0][3][0].as_f64().unwrap() - 2.0).abs() < 1e-9);
    assert!((cells[3][3][0].as_f64().unwrap() - 2.5).abs() < 1e-9);
}

#[test]
fn vbsweep_csv_has_the_documented_shape() {
    let out = qgame(&["vbsweep", "--grid", "11"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let lines: Vec<&str> = text.trim_end().lines().collect();
    assert_eq!(lines[0], "p,q,payoff");
    assert_eq!(lines.len(), 122); // header + 11*11 points
    assert!(lines.contains(&"1,0,2.5"));
}

#[test]
fn reproduce_passes_with_flagged_cells() {
    let out = qgame(&["reproduce"]);
    assert_eq!(
        code(&out),
        0,
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = stdout(&out);
    assert!(text.contains("submatrix-CQ"));
    assert!(text.contains("flagged"));
    assert!(!text.contains("MISMATCH"));
}

#[test]
fn reproduce_json_is_structured_and_deterministic() {
    let first = qgame(&["reproduce", "--format", "json"]);
    let second = qgame(&["reproduce", "--format", "json"]);
    assert_eq!(code(&first), 0);
    assert_eq!(stdout(&first), stdout(&second), "byte-identical reruns");

    let json: serde_json::Value = serde_json::from_str(&stdout(&first)).unwrap();
    let claims = json["claims"].as_array().unwrap();
    assert_eq!(claims.len(), 22);
    let flagged: Vec<&str> = claims
        .iter()
        .filter(|c| c["verdict"] == "flagged-discrepancy")
        .map(|c| c["id"].as_str().unwrap())
        .collect();
    assert_eq!(flagged, vec!["submatrix-CQ", "submatrix-QC"]);
    assert!(json["tables"]["ewl-matrix"].is_object());
}

#[test]
fn tolerance_env_var_is_honored_and_validated() {
    let out = qgame_env(
        &["reproduce", "--format", "json"],
        "QGAME_TOLERANCE",
        "1e-3",
    );
    assert_eq!(code(&out), 0);
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["tolerance"].as_f64().unwrap(), 1e-3);

    let bad = qgame_env(&["reproduce"], "QGAME_TOLERANCE", "bogus");
    assert_eq!(code(&bad), 2);
}

#[test]
fn matrix_json_round_trips_through_equilibria() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("game.json");
    let exported = qgame(&[
        "matrix",
        "--spec",
        "ewl",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&exported), 0);
    // --out writes exactly the stdout bytes
    assert_eq!(std::fs::read_to_string(&path).unwrap(), stdout(&exported));

    let from_file = qgame(&[
        "equilibria",
        "--game",
        path.to_str().unwrap(),
        "--format",
        "json",
    ]);
    let from_spec = qgame(&["equilibria", "--spec", "ewl", "--format", "json"]);
    assert_eq!(code(&from_file), 0);
    assert_eq!(stdout(&from_file), stdout(&from_spec), "identical analysis");

    let json: serde_json::Value = serde_json::from_str(&stdout(&from_file)).unwrap();
    let pure = json["pure"].as_array().unwrap();
    assert_eq!(pure.len(), 1);
    assert_eq!(pure[0]["row_label"], "Q");
    assert_eq!(pure[0]["kind"], "strict");
}

#[test]
fn equilibria_on_a_degenerate_1x1_game() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("tiny.json");
    std::fs::write(
        &path,
        r#"{"labels":{"row":["0"],"col":["0"]},"cells":[[[0.0,0.0]]]}"#,
    )
    .unwrap();
    let out = qgame(&["equilibria", "--game", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("weak"), "got: {text}");
}

#[test]
fn equilibria_table_reports_dominance() {
    let out = qgame(&["equilibria", "--spec", "ewl", "--format", "table"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("pure equilibria"));
    assert!(text.contains("(Q,Q)"));
    assert!(text.contains("no dominated strategies"), "got: {text}");
}

#[test]
fn malformed_game_file_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.json");
    std::fs::write(&path, "{not json").unwrap();
    assert_eq!(
        code(&qgame(&["equilibria", "--game", path.to_str().unwrap()])),
        2
    );
    assert_eq!(
        code(&qgame(&["equilibria", "--game", "/nonexistent/game.json"])),
        2
    );
}

fn write_and_check_out(dir: &Path, args: &[&str], name: &str) {
    let path = dir.join(name);
    let mut full = args.to_vec();
    full.extend(["--out", path.to_str().unwrap()]);
    let out = qgame(&full);
    assert_eq!(code(&out), 0);
    assert_eq!(std::fs::read_to_string(&path).unwrap(), stdout(&out));
}

#[test]
fn out_flag_duplicates_stdout() {
    let dir = tempfile::tempdir().unwrap();
    write_and_check_out(dir.path(), &["vbsweep", "--grid", "5"], "sweep.csv");
    write_and_check_out(
        dir.path(),
        &["play", "--alice", "C", "--bob", "D", "--format", "json"],
        "play.json",
    );
}

#[test]
fn reproduce_emits_tables_and_persists_the_json_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = qgame(&["reproduce", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    // stdout has the human-readable tables and claim lines
    assert!(stdout(&out).contains("A\\B"));
    assert!(stdout(&out).contains("claim audit"));
    // the file is the machine-readable bundle, whatever the stdout format
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(json["claims"].as_array().unwrap().len(), 22);
}
