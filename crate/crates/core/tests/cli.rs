use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use opalab::output::read_json;

fn opalab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_opalab")).args(args).output().unwrap()
}

fn code(args: &[&str]) -> i32 {
    opalab(args).status.code().unwrap()
}

fn write_weight(dir: &Path, body: &str) -> String {
    let p = dir.join("w.json");
    fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_owned()
}

const PAIR: &str = r#"{"zeros":[{"num":1,"den":3,"exp":1.0},{"num":-1,"den":3,"exp":1.0}]}"#;

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let w = write_weight(dir.path(), PAIR);
    assert_eq!(code(&["residual", "--weight", &w, "--n", "4"]), 0);
    assert_eq!(code(&["--help"]), 0);
    // usage
    assert_eq!(code(&["frobnicate"]), 1);
    assert_eq!(code(&["zeros", "--n", "4"]), 1);
    assert_eq!(code(&["zeros", "--weight", &w, "--poly", "1,-1", "--n", "4"]), 1);
    assert_eq!(code(&["zeros", "--weight", &w, "--n", "601"]), 1);
    assert_eq!(code(&["zeros", "--weight", &w, "--n-from", "10", "--n-to", "700"]), 1);
    assert_eq!(code(&["partner", "--poly", "1,-1", "--n", "4"]), 1);
    assert_eq!(code(&["opa", "--poly", "0,1", "--n", "4"]), 1);
    let bad = dir.path().join("bad.json");
    fs::write(&bad, r#"{"zeros":[{"num":1,"den":0,"exp":1.0}]}"#).unwrap();
    assert_eq!(code(&["zeros", "--weight", bad.to_str().unwrap(), "--n", "4"]), 1);
    fs::write(&bad, "not json").unwrap();
    assert_eq!(code(&["zeros", "--weight", bad.to_str().unwrap(), "--n", "4"]), 1);
    // numerical failure: an unattainable root tolerance
    assert_eq!(code(&["zeros", "--weight", &w, "--n", "40", "--root-tol", "1e-300"]), 2);
    // I/O
    assert_eq!(code(&["zeros", "--weight", "/nonexistent/w.json", "--n", "4"]), 3);
    assert_eq!(code(&["residual", "--weight", &w, "--n", "4", "--out", "/nonexistent/dir/x.csv"]), 3);
}

#[test]
fn opa_of_one_minus_z() {
    let out = opalab(&["opa", "--poly", "1:0,-1:0", "--n", "3"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,index,re,im");
    // p_3 = (4 + 3z + 2z^2 + z^3)/5
    for (k, want) in [0.8, 0.6, 0.4, 0.2].iter().enumerate() {
        let re: f64 = lines[k + 1].split(',').nth(2).unwrap().parse().unwrap();
        assert!((re - want).abs() < 1e-15);
    }
}

#[test]
fn outputs_are_deterministic_and_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let w = write_weight(dir.path(), PAIR);
    for fmt in ["csv", "json", "svg"] {
        let a = dir.path().join(format!("a.{fmt}"));
        let b = dir.path().join(format!("b.{fmt}"));
        for p in [&a, &b] {
            let args = ["sweep", "--weight", &w, "--n-from", "5", "--n-to", "30", "--step", "5", "--format", fmt, "--out", p.to_str().unwrap()];
            assert_eq!(code(&args), 0);
        }
        assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap(), "{fmt}");
    }
    let recs = read_json(&dir.path().join("a.json")).unwrap();
    assert_eq!(recs.len(), 6);
    assert_eq!(recs.iter().map(|r| r.n).collect::<Vec<_>>(), vec![5, 10, 15, 20, 25, 30]);
    let again = opalab::output::json_string(&recs).unwrap();
    assert_eq!(again.as_bytes(), fs::read(dir.path().join("a.json")).unwrap().as_slice());
    let csv = fs::read_to_string(dir.path().join("a.csv")).unwrap();
    let rows = recs
        .iter()
        .map(|r| r.phi_zeros.len() + r.opa_zeros.len() + r.partner_roots.len() + r.spurious.len())
        .sum::<usize>();
    assert_eq!(csv.lines().count(), 1 + rows);
    assert!(!csv.contains('\r'));
}

#[test]
fn figure_one_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = opalab(&["figure", "fig1", "--outdir", dir.path().to_str().unwrap()]);
    assert!(out.status.success());
    let rows = |name: &str| fs::read_to_string(dir.path().join(name)).unwrap().lines().count() - 1;
    assert_eq!(rows("fig1_n100_phi.csv"), 100);
    assert_eq!(rows("fig1_n100_opa.csv"), 100);
    assert_eq!(rows("fig1_n101_phi.csv"), 101);
    assert_eq!(rows("fig1_n101_opa.csv"), 101);
    let partner = fs::read_to_string(dir.path().join("fig1_partner.csv")).unwrap();
    let lines: Vec<&str> = partner.lines().skip(1).collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[0].starts_with("100,partner,0,2.0") && lines[0].ends_with("outside"));
    assert!(lines[1].starts_with("101,partner,0,") && lines[1].ends_with("inside"));
    // odd degree: the partner root inside the disk drags one zero with it
    let phi101 = fs::read_to_string(dir.path().join("fig1_n101_phi.csv")).unwrap();
    assert_eq!(phi101.lines().filter(|l| l.ends_with(",spurious")).count(), 1);
    let phi100 = fs::read_to_string(dir.path().join("fig1_n100_phi.csv")).unwrap();
    assert_eq!(phi100.lines().filter(|l| l.ends_with(",spurious")).count(), 0);
}

#[test]
fn figure_two_layers_match_csv() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&["figure", "fig2", "--outdir", dir.path().to_str().unwrap()]), 0);
    let csv = fs::read_to_string(dir.path().join("fig2_n120.csv")).unwrap();
    let svg = fs::read_to_string(dir.path().join("fig2_n120.svg")).unwrap();
    let count_kind = |k: &str| csv.lines().filter(|l| l.split(',').nth(1) == Some(k)).count();
    let count_layer = |name: &str| {
        let start = svg.find(&format!("<g id=\"{name}\"")).unwrap();
        let end = start + svg[start..].find("</g>").unwrap();
        svg[start..end].matches("<circle").count()
    };
    for k in ["phi", "opa", "partner", "spurious"] {
        assert_eq!(count_kind(k), count_layer(k), "{k}");
    }
    assert_eq!(count_kind("spurious"), 1);
    assert_eq!(count_layer("reflected-spurious"), 1);
    assert_eq!(csv.lines().filter(|l| l.ends_with(",reflected-spurious")).count(), 1);
    assert!(svg.contains("viewBox=\"-2.2 -2.2 4.4 4.4\""));
}

#[test]
fn figure_three_metrics() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&["figure", "fig3", "--outdir", dir.path().to_str().unwrap()]), 0);
    let m = fs::read_to_string(dir.path().join("fig3_metrics.csv")).unwrap();
    let ns: Vec<usize> = m.lines().skip(1).map(|l| l.split(',').next().unwrap().parse().unwrap()).collect();
    assert!(ns.iter().all(|n| n % 6 == 2 && (20..=98).contains(n)));
    let recs = read_json(&dir.path().join("fig3.json")).unwrap();
    assert_eq!(recs.len(), 14);
    assert_eq!(recs.last().unwrap().spurious.len(), 2);
}

#[test]
fn case_commands() {
    let out = opalab(&["case", "conjugate", "--k", "1", "--l", "3", "--n", "121", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v[0]["n_mod_l"], 1);
    assert_eq!(v[0]["n_prime"], 1);
    assert!((v[0]["limit"].as_f64().unwrap() - 2.0).abs() < 1e-12);
    let out = opalab(&["case", "opposite", "--a", "1", "--b", "3", "--n-from", "20", "--n-to", "21"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 3);
    let out = opalab(&["case", "jacobi", "--a", "1", "--n", "11", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v[0]["phi_real_zeros"].as_array().unwrap().len(), 1);
    assert!(v[0]["ode_residual"].as_f64().unwrap() < 1e-8);
    assert_eq!(code(&["case", "jacobi", "--a", "0", "--n", "3"]), 1);
    assert_eq!(code(&["case", "conjugate", "--k", "1", "--l", "1", "--n", "3"]), 1);
}
