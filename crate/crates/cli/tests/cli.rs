use nicecurve_cli::{run, EXIT_USAGE};

fn nc(args: &[&str]) -> nicecurve_cli::Outcome {
    run(std::iter::once("nicecurve").chain(args.iter().copied()))
}

#[test]
fn torsion_exit_codes() {
    let ok = nc(&["torsion", "8/5", "-15"]);
    assert_eq!(ok.code, 0, "{}", ok.stderr);
    assert!(ok.stdout.contains("Z2xZ4"));
    // not squarefree
    assert_eq!(nc(&["torsion", "8/5", "4"]).code, EXIT_USAGE);
    // not nice
    assert_eq!(nc(&["torsion", "2", "-1"]).code, EXIT_USAGE);
    assert_eq!(nc(&["torsion", "x", "-1"]).code, EXIT_USAGE);
}

#[test]
fn malformed_invocations() {
    assert_eq!(nc(&["frobnicate"]).code, EXIT_USAGE);
    assert_eq!(nc(&["chabauty", "--prime", "4"]).code, EXIT_USAGE);
    assert_eq!(nc(&["chabauty", "--precision", "3"]).code, EXIT_USAGE);
    assert_eq!(nc(&["search", "Hq", "--bound", "0"]).code, EXIT_USAGE);
    assert_eq!(nc(&["param", "t", "1/2"]).code, EXIT_USAGE);
    let help = nc(&["--help"]);
    assert_eq!(help.code, 0);
    assert!(help.stdout.contains("verify-theorem"));
}

#[test]
fn csv_sweep() {
    let out = nc(&["param", "t", "--csv", "3", "--", "-2/7"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let lines: Vec<_> = out.stdout.lines().collect();
    assert_eq!(lines[0], "t,L,W,r,s,torsion_class_d,j_num,j_den");
    assert_eq!(lines[1], "3/1,8/5,7/5,2/5,4/3,-15,470596,225");
    assert_eq!(lines.len(), 3);
    assert_eq!(nc(&["param", "u", "2", "--csv"]).code, EXIT_USAGE);
}

#[test]
fn json_is_deterministic() {
    let args = ["--format", "json", "verify-theorem", "--samples", "5"];
    let a = nc(&args);
    let b = nc(&args);
    assert_eq!(a.code, 0, "{}", a.stderr);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_str(&a.stdout).unwrap();
    assert_eq!(v["schema_version"], "1");
    assert!(v["claims"].as_array().unwrap().iter().any(|c| c["id"] == "thm1.ii"));
}

#[test]
fn search_both_curves() {
    let hq = nc(&["search", "hq", "--bound", "100"]);
    assert_eq!(hq.code, 0);
    assert!(hq.stdout.contains("7 points"));
    let h = nc(&["--format", "json", "search", "H", "--bound", "100"]);
    let v: serde_json::Value = serde_json::from_str(&h.stdout).unwrap();
    assert_eq!(v["claims"][0]["witnesses"]["count"], 12);
}

#[test]
fn twist_and_timing() {
    let out = nc(&["twist", "8/5", "-3", "--timing"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stderr.starts_with("elapsed "));
}
