use std::process::{Command, Output};

fn eulerian(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eulerian"))
        .args(args)
        .env_remove("EULERIAN_MAX_DEGREE")
        .env_remove("EULERIAN_BRUTE_CAP_A")
        .env_remove("EULERIAN_BRUTE_CAP_BD")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

#[test]
fn dist_plus_excedance_both_methods_match() {
    let out = eulerian(&[
        "dist", "--group", "a", "--stat", "exc", "--sign", "plus", "--n", "3", "--method", "both",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out),
        "{\"n\":3,\"group\":\"a\",\"sign\":\"plus\",\"stat\":\"exc\",\"coeffs\":[\"1\",\"1\",\"1\"]}\nmatch\n"
    );
}

#[test]
fn dist_type_b_descents_as_csv() {
    let out = eulerian(&["dist", "--group", "b", "--stat", "des-b", "--n", "2", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "k,count\n0,1\n1,6\n2,1\n");
}

#[test]
fn dist_type_d_descents() {
    let out = eulerian(&["dist", "--group", "d", "--stat", "des-d", "--n", "2", "--method", "brute"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("\"coeffs\":[\"1\",\"2\",\"1\"]"));
}

#[test]
fn unknown_statistic_is_a_usage_error() {
    let out = eulerian(&["dist", "--group", "d", "--stat", "maj", "--n", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn statistic_foreign_to_group_is_a_usage_error() {
    let out = eulerian(&["dist", "--group", "a", "--stat", "des-d", "--n", "3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn brute_force_beyond_cap_is_a_resource_error() {
    let out = eulerian(&["dist", "--group", "d", "--stat", "des-d", "--n", "12", "--method", "brute"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(out.stdout.is_empty());
}

#[test]
fn cap_can_be_lowered_from_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_eulerian"))
        .args(["dist", "--group", "a", "--stat", "des", "--n", "5", "--method", "brute"])
        .env("EULERIAN_BRUTE_CAP_A", "4")
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn carlitz_halves_of_b_pass() {
    let out = eulerian(&["verify", "carlitz", "--family", "b-pm", "--n-range", "1..10"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 20);
    for line in lines {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["pass"], true);
        assert_eq!(v["first_fail_k"], serde_json::Value::Null);
        assert_eq!(v["K"], 50);
    }
}

#[test]
fn mantaci_identity_passes() {
    let out = eulerian(&["verify", "identity", "--name", "mantaci", "--n-range", "1..8"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).lines().count(), 8);
}

#[test]
fn involution_reports_pass() {
    let out = eulerian(&["verify", "involution", "--n-range", "3..6"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 8);
    for line in text.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["pass"], true, "{line}");
    }
}

#[test]
fn clt_sweep_reports_exact_moments() {
    let out = eulerian(&["clt", "--family", "a-des", "--n-range", "2..4"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let rows: Vec<Vec<&str>> = text.lines().map(|l| l.split(',').collect()).collect();
    assert_eq!(rows[0], ["n", "mean", "variance", "ks"]);
    assert_eq!(&rows[1][..3], ["2", "1/2", "1/4"]);
    assert_eq!(&rows[2][..3], ["3", "1/1", "1/3"]);
    assert_eq!(&rows[3][..3], ["4", "3/2", "5/12"]);
}

#[test]
fn output_is_byte_stable_across_thread_counts() {
    let runs = [
        vec!["verify", "carlitz", "--family", "d-pm", "--n-range", "2..12"],
        vec!["verify", "identity", "--name", "sgnbdes", "--n-range", "1..6"],
        vec!["clt", "--family", "bdes-over-d", "--sign", "plus", "--n-range", "3..20", "--format", "json"],
        vec![
            "dist",
            "--group",
            "b-minus-d",
            "--stat",
            "des-b",
            "--sign",
            "minus",
            "--n",
            "6",
            "--method",
            "both",
        ],
    ];
    for args in runs {
        let outputs: Vec<Vec<u8>> = ["1", "4", "16"]
            .iter()
            .map(|t| {
                let mut full = vec!["--threads", t];
                full.extend(&args);
                let out = eulerian(&full);
                assert_eq!(out.status.code(), Some(0), "{full:?}");
                out.stdout
            })
            .collect();
        assert!(outputs.windows(2).all(|w| w[0] == w[1]), "{args:?}");
    }
}
