use std::process::Command;

use spinchar::cli::run_from;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("spinchar").chain(args.iter().copied());
    let code = run_from(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

#[test]
fn verify_mod2_family_at_5() {
    let (code, out, _) = run(&[
        "verify",
        "--source",
        "corollary-3.3",
        "--p",
        "5",
        "--n-max",
        "200",
    ]);
    assert_eq!(code, 0);
    let lines: Vec<serde_json::Value> = out
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 4);
    let bs: Vec<u64> = lines.iter().map(|v| v["B"].as_u64().unwrap()).collect();
    assert_eq!(bs, vec![6, 11, 16, 21]);
    for v in &lines {
        assert_eq!(v["holds"], true);
        assert_eq!(v["A"], 25);
        assert_eq!(v["M"], 2);
        assert!(v["counterexample"].is_null());
    }
}

#[test]
fn descriptive_ids_and_aliases_agree() {
    let a = run(&[
        "verify",
        "--source",
        "theorem-4.1",
        "--p",
        "7",
        "--n-max",
        "50",
    ]);
    let b = run(&[
        "verify",
        "--source",
        "bar-core-parity",
        "--p",
        "7",
        "--n-max",
        "50",
    ]);
    assert_eq!(a, b);
    assert_eq!(a.1.lines().count(), 3);
}

#[test]
fn enumerate_cores_as_json() {
    let (code, out, _) = run(&[
        "enumerate",
        "--kind",
        "pbar-core",
        "--n",
        "31",
        "--p",
        "7",
        "--format",
        "json",
    ]);
    assert_eq!(code, 0);
    let v: Vec<Vec<usize>> = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(v.len(), 4);
    assert!(v.contains(&vec![16, 9, 4, 2]));
}

#[test]
fn zero_order_series() {
    let (code, out, _) = run(&[
        "series",
        "--function",
        "f-shat",
        "--order",
        "0",
        "--format",
        "json",
    ]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), r#"{"order":0,"coeffs":["1"]}"#);
    let (_, text, _) = run(&["--quiet", "series", "--function", "f-shat", "--order", "0"]);
    assert_eq!(text, "0 1\n");
}

#[test]
fn series_csv_has_header() {
    let (code, out, _) = run(&[
        "series",
        "--function",
        "f-pbar",
        "--p",
        "7",
        "--order",
        "3",
        "--format",
        "csv",
    ]);
    assert_eq!(code, 0);
    assert_eq!(out, "n,coeff\n0,1\n1,1\n2,1\n3,2\n");
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        vec!["series", "--function", "f-pbar"],
        vec!["series", "--function", "f-pbar", "--p", "9"],
        vec!["series", "--function", "p", "--p", "5"],
        vec!["series", "--function", "nope"],
        vec!["enumerate", "--kind", "pbar-core", "--n", "5"],
        vec!["enumerate", "--kind", "bar", "--n", "5", "--p", "3"],
        vec!["abacus", "--partition", "3,3", "--p", "5"],
        vec!["abacus", "--partition", "x", "--p", "5"],
        vec!["verify", "--source", "corollary-3.3", "--p", "7"],
        vec!["verify", "--source", "theorem-9.9"],
        vec!["search", "--counter", "f-shat", "--n-max", "10"],
        vec![
            "--max-order",
            "10",
            "series",
            "--function",
            "p",
            "--order",
            "11",
        ],
        vec!["frobnicate"],
        vec![],
    ] {
        let (code, _, err) = run(&args);
        assert_eq!(code, 2, "{args:?}");
        assert!(!err.is_empty(), "{args:?}");
    }
}

#[test]
fn abacus_and_degree_text() {
    let (code, out, _) = run(&["--quiet", "abacus", "--partition", "16,9,4,2", "--p", "7"]);
    assert_eq!(code, 0);
    assert!(out.ends_with("7-bar-core: yes\n"));
    let (code, out, _) = run(&[
        "--quiet",
        "degree",
        "--partition",
        "5,3,2",
        "--primes",
        "3,5",
    ]);
    assert_eq!(code, 0);
    assert_eq!(
        out,
        "bar lengths: 8 7 5 4 1 | 5 3 2 | 2 1\ndegree: 432\ndefect p=3: 1\ndefect p=5: 2\n"
    );
    let (_, json, _) = run(&[
        "degree",
        "--partition",
        "5,3,2",
        "--primes",
        "7",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(json.trim()).unwrap();
    assert_eq!(v["degree"], "432");
    assert_eq!(v["defects"]["7"], 1);
}

#[test]
fn identities_all_match() {
    let (code, out, _) = run(&["--quiet", "identities", "--order", "150"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 13);
    assert!(out.lines().all(|l| l.contains(" match ")));
}

#[test]
fn search_reports_candidates() {
    let (code, out, _) = run(&[
        "search",
        "--counter",
        "f-shat",
        "--a-max",
        "25",
        "--moduli",
        "2",
        "--format",
        "json",
    ]);
    assert_eq!(code, 0);
    let found: Vec<(u64, u64)> = out
        .lines()
        .map(|l| {
            let v: serde_json::Value = serde_json::from_str(l).unwrap();
            assert_eq!(v["status"], "candidate");
            (v["A"].as_u64().unwrap(), v["B"].as_u64().unwrap())
        })
        .collect();
    assert_eq!(found, vec![(25, 6), (25, 11), (25, 16), (25, 21)]);
}

#[test]
fn counts_sources_agree() {
    let a = run(&[
        "counts", "--n-max", "40", "--primes", "3,5,7", "--source", "series",
    ]);
    let b = run(&[
        "counts",
        "--n-max",
        "40",
        "--primes",
        "3,5,7",
        "--source",
        "enumeration",
    ]);
    assert_eq!(a.0, 0);
    assert_eq!(a, b);
    let header = a.1.lines().next().unwrap();
    assert!(header.starts_with("n,f_S_hat,f_A_hat,f_pbar_p3,"));
    assert_eq!(a.1.lines().count(), 42);
}

#[test]
fn binary_output_is_deterministic() {
    let bin = env!("CARGO_BIN_EXE_spinchar");
    let args = ["verify", "--source", "all", "--n-max", "60"];
    let first = Command::new(bin).args(args).output().unwrap();
    let second = Command::new(bin).args(args).output().unwrap();
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
    assert!(!first.stdout.is_empty());

    let bad = Command::new(bin)
        .args(["series", "--function", "f0-shat", "--p", "4"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
    assert!(bad.stdout.is_empty());

    let help = Command::new(bin).arg("--help").output().unwrap();
    assert_eq!(help.status.code(), Some(0));
}
