use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_conecalc"))
        .args(args)
        .env("CONECALC_MAX_R", "8")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn degree_of_top_power() {
    let o = run(&["deg", "--space", "xr:5", "H^5"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "1\n");
    let o = run(&["deg", "--space", "xr:4", "E^4"]);
    assert_eq!(stdout(&o), "18\n");
    let o = run(&["deg", "--space", "sec:6,2", "zeta^3"]);
    assert_eq!(stdout(&o), "10\n");
}

#[test]
fn product_is_grade_separated() {
    let o = run(&["mul", "--space", "xr:4", "H + E", "1 + E"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "codim 1: H + E\ncodim 2: -j(h2) + 10*j(h1)\n");
    let o = run(&["--json", "mul", "--space", "xr:4", "E", "E"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["graded"]["2"], "-j(h2) + 6*j(h1)");
}

#[test]
fn psi_maps() {
    let o = run(&["push", "--n", "4", "1"]);
    assert_eq!(stdout(&o), "codim 1: 3*H - 2*E\n");
    let o = run(&["pull", "--n", "5", "E^2"]);
    assert_eq!(stdout(&o), "codim 2: 4*zeta*h - 31*h^2\n");
    let o = run(&["push", "--n", "3", "1"]);
    assert_eq!(code(&o), 3);
}

#[test]
fn pairing_and_numbasis() {
    let o = run(&["numbasis", "--space", "xr:5", "--codim", "4"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("relation: j(h2^3) - 5*H^4 + 7*j(h2^2*h1) = 0"));
    let o = run(&["--json", "pairing", "--space", "xr:4", "--codim", "1"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["rows"], serde_json::json!(["H", "E"]));
    assert!(v["matrix"][0][0].is_string());
    let o = run(&["pairing", "--space", "sec:5,2", "--codim", "1"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn verify_single_case() {
    let o = run(&["verify", "--case", "cor_relation", "--r", "6"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).starts_with("PASS cor_relation r=6"));
    let o = run(&["--json", "verify", "--case", "eff2_AB", "--params", "n=7"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["case"], "eff2_AB");
    assert_eq!(v["params"]["n"], "7");
    assert_eq!(v["pass"], true);
    let keys: Vec<_> = v.as_object().unwrap().keys().cloned().collect();
    assert_eq!(keys, ["case", "checks", "notes", "params", "pass"]);
}

#[test]
fn verify_sweeps_missing_parameters() {
    let o = run(&["verify", "--case", "effW_k", "--r", "4"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).ends_with("3 instances, 0 failed\n"));
}

#[test]
fn verify_all_passes_in_case_order() {
    let o = run(&["verify", "--all"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let text = stdout(&o);
    let ids: Vec<&str> = text
        .lines()
        .filter_map(|l| l.split_whitespace().nth(1))
        .collect();
    let mut order: Vec<&str> = conecalc::catalog::list_cases()
        .iter()
        .map(|r| r.id)
        .collect();
    order.retain(|id| ids.contains(id));
    let mut seen: Vec<&str> = ids.clone();
    seen.dedup();
    seen.pop(); // summary line
    assert_eq!(seen, order);
    // Deterministic across runs.
    assert_eq!(stdout(&run(&["verify", "--all"])), text);
}

#[test]
fn every_case_is_reachable() {
    for rec in conecalc::catalog::list_cases() {
        let o = run(&["verify", "--case", rec.id]);
        assert_eq!(code(&o), 0, "{}: {}", rec.id, stdout(&o));
    }
}

#[test]
fn exit_codes() {
    assert_eq!(code(&run(&["verify", "--case", "eff2_AB", "--n", "4"])), 3);
    assert_eq!(code(&run(&["verify", "--case", "no_such_case"])), 2);
    assert_eq!(code(&run(&["verify"])), 2);
    assert_eq!(code(&run(&["deg", "--space", "xr:5", "j(j(h1))"])), 2);
    assert_eq!(code(&run(&["deg", "--space", "xr:5", "zeta"])), 2);
    assert_eq!(code(&run(&["deg", "--space", "bogus", "H"])), 2);
    assert_eq!(code(&run(&["deg", "--space", "xr:1", "H"])), 3);
    assert_eq!(code(&run(&["nonsense"])), 2);
    assert_eq!(code(&run(&["formula", "nodes", "--d", "2"])), 3);
}

#[test]
fn cone_output() {
    let o = run(&["cone", "--case", "eff2_AB", "--n", "6"]);
    assert_eq!(code(&o), 0);
    let t = stdout(&o);
    assert!(t.contains("ray   (5, -1, -12)"));
    assert!(t.contains("facet (3, 5, 1) >= 0"));
    let o = run(&["--json", "cone", "--case", "effdiv_Y", "--d", "4"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(
        v["cones"][0]["rays"],
        serde_json::json!([["0", "1"], ["2", "-1"]])
    );
    assert_eq!(code(&run(&["cone", "--case", "chow_PE", "--n", "5"])), 2);
}

#[test]
fn formulas() {
    assert_eq!(
        stdout(&run(&["formula", "berzolari", "--d", "6", "--g", "0"])),
        "20\n"
    );
    assert_eq!(stdout(&run(&["formula", "nodes", "--d", "4"])), "1\n");
    assert_eq!(stdout(&run(&["formula", "h0p3", "--k", "3"])), "20\n");
    assert_eq!(
        stdout(&run(&["formula", "h0curve", "--d", "6", "--k", "3"])),
        "19\n"
    );
    assert_eq!(
        stdout(&run(&["formula", "zslope", "--d", "3", "--e", "9"])),
        "3\n"
    );
    assert_eq!(
        stdout(&run(&[
            "formula", "zslope", "--d", "3", "--e", "9", "--m", "4"
        ])),
        "-9\n"
    );
}

#[test]
fn out_file_and_catalog_export() {
    let dir = std::env::temp_dir().join(format!("conecalc-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("cases.json");
    let o = run(&["--json", "--out", path.to_str().unwrap(), "cases"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let recs = v.as_array().unwrap();
    assert_eq!(recs.len(), conecalc::catalog::list_cases().len());
    let w = recs.iter().find(|r| r["id"] == "effW_k").unwrap();
    assert_eq!(
        w["instances"][0]["claims"][0]["generators"],
        serde_json::json!(["H - E", "E"])
    );
    std::fs::remove_dir_all(&dir).unwrap();
}
