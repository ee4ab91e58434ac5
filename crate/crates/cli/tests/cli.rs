use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use rfold_core::torus::text::read_field;
use rfold_core::torus::{WaveVector, C};
use serde_json::Value;

fn rfold(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rfold"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

fn sample(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("samples").join(name)
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn schwarzschild_curvature_suite_is_exact() {
    let o = rfold(&[
        "verify", "--geometry", "schwarzschild:1:3", "--suite", "curvature", "--order", "5", "--format", "json",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let v = json(&o);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["seed"], 1);
    let records = v["records"].as_array().unwrap();
    assert!(!records.is_empty());
    for r in records {
        assert!(r["anchor"].as_str().is_some_and(|a| !a.is_empty()));
        assert!(r.get("elapsed_ms").is_none());
        if r["status"] == "pass" && r["expect"] == "zero" {
            assert_eq!(r["residual"], "0", "{}", r["id"]);
        }
    }
}

#[test]
fn flat_double_forms_pass() {
    let o = rfold(&["verify", "--geometry", "flat-euclidean", "--suite", "double_forms"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("PASS  double_forms/trace-d  flat-euclidean  residual 0"));
}

#[test]
fn unknown_geometry_is_a_usage_error() {
    let o = rfold(&["verify", "--geometry", "nosuch"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown geometry `nosuch`"));
}

#[test]
fn order_below_budget_is_a_usage_error() {
    let o = rfold(&["verify", "--geometry", "flat-euclidean", "--suite", "curvature", "--order", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("insufficient jet order"));
}

#[test]
fn failing_identity_exits_one_and_names_the_comparison() {
    let o = rfold(&["verify", "--geometry", "flrw:2,1,3", "--check", "riemann-wave-index-printed"]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.contains("FAIL  curvature/riemann-wave-index-printed"));
    assert!(text.contains("deciding:"));
}

#[test]
fn timings_are_opt_in() {
    let o = rfold(&["verify", "--geometry", "flat-euclidean", "--check", "trace-d", "--format", "json", "--timings"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(json(&o)["records"][0]["elapsed_ms"].is_number());
}

#[test]
fn report_can_go_to_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let o = rfold(&[
        "verify", "--geometry", "flat-euclidean", "--check", "trace-d", "--format", "json", "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(v["summary"]["passed"], 1);
}

#[test]
fn bad_thread_count_is_a_usage_error() {
    let o = Command::new(env!("CARGO_BIN_EXE_rfold"))
        .args(["list", "suites"])
        .env("RFOLD_THREADS", "0")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn listings() {
    let o = rfold(&["list", "geometries"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("constcurv:K"));

    let o = rfold(&["list", "checks", "--suite", "curvature"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let at = text.find("riemann-wave-weighted ").unwrap();
    let anchor = text[at..].lines().nth(1).unwrap().trim();
    assert!(anchor.contains("bar Delta"), "{anchor}");
    assert!(!text.contains("trace-d "));

    assert_eq!(rfold(&["list", "checks", "--suite", "nosuch"]).status.code(), Some(2));
}

const SINGLE_MODE: &str = "dim 3\nshape 1:[2]\nbandlimit 1\nkind fourier\n1 0 0 : 0 1 : 1 0\n";

#[test]
fn single_mode_two_form_potentials() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "f.field", SINGLE_MODE);
    let out = dir.path().join("out");
    let o = rfold(&["decompose", &input, "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let read = |name: &str| read_field(&std::fs::read_to_string(out.join(name)).unwrap()).unwrap();
    let k = WaveVector(vec![1, 0, 0]);
    // T° = F / |k|^2 = F, Gamma = d T° = i k ^ F = 0, Psi = delta T° = -i k^c F_c.
    let t0 = read("superpotential.field");
    assert_eq!(t0.mode(&k).unwrap().component(&[0, 1]).unwrap(), C::new(1.0, 0.0));
    assert!(read("gamma.field").is_zero());
    let psi = read("psi.field");
    assert_eq!(psi.modes().len(), 1);
    assert_eq!(psi.mode(&k).unwrap().component(&[1]).unwrap(), C::new(0.0, -1.0));
    assert!(read("harmonic.field").is_zero());
}

#[test]
fn constant_field_is_all_harmonic() {
    let dir = tempfile::tempdir().unwrap();
    let text = "dim 3\nshape 1:[2]\nbandlimit 1\nkind fourier\n0 0 0 : 0 2 : 0.5 0\n";
    let input = write(dir.path(), "c.field", text);
    let out = dir.path().join("out");
    let o = rfold(&["decompose", &input, "--out", out.to_str().unwrap(), "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let read = |name: &str| read_field(&std::fs::read_to_string(out.join(name)).unwrap()).unwrap();
    for name in ["superpotential.field", "psi.field", "gamma.field"] {
        assert!(read(name).is_zero(), "{name}");
    }
    let h = read("harmonic.field");
    assert_eq!(h.residual(&read_field(text).unwrap()).unwrap(), 0.0);
    let v: Value = serde_json::from_str(&std::fs::read_to_string(out.join("summary.json")).unwrap()).unwrap();
    assert_eq!(v["pass"], true);
}

#[test]
fn packaged_weyl_sample() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    let o = rfold(&[
        "decompose",
        sample("weyl-t4.field").to_str().unwrap(),
        "--kind",
        "weyl",
        "--format",
        "json",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let v = json(&o);
    assert_eq!(v["shape"], "2:[2,2]");
    let residuals = v["residuals"].as_array().unwrap();
    for name in ["P_a[bcde]", "P^e_[bcd]e", "P_[abcd]e", "reconstruction (first form)"] {
        let r = residuals.iter().find(|r| r["name"] == name).unwrap();
        let value: f64 = r["value"].as_str().unwrap().parse().unwrap();
        assert!(value <= 1e-12, "{name}: {value}");
    }
    let p = read_field(&std::fs::read_to_string(out.join("p.field")).unwrap()).unwrap();
    assert_eq!(p.shape().ranks(), &[2, 3][..]);
    assert!(!p.is_zero());
}

#[test]
fn random_riemann_decomposition() {
    let o = rfold(&["decompose", "--random", "--kind", "riemann", "--bandlimit", "1", "--seed", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("PASS  Ricci reconstruction"));
}

#[test]
fn lorentzian_and_malformed_fields_are_usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    let lor = write(dir.path(), "l.field", &SINGLE_MODE.replace("kind fourier\n", "kind fourier\nmetric lorentzian\n"));
    let o = rfold(&["decompose", &lor]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("positive-definite"));

    let bad = write(dir.path(), "b.field", "dim 3\nshape 1:[2]\nbandlimit 1\nkind fourier\n1 0 : 0 1 : 1 0\n");
    assert_eq!(rfold(&["decompose", &bad]).status.code(), Some(2));

    let unsym = write(dir.path(), "u.field", "dim 3\nshape 2:[1,1]\nbandlimit 1\nkind fourier\n1 0 0 : 0 1 : 1 0\n");
    let o = rfold(&["decompose", &unsym, "--kind", "pp-symmetric"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("input contract"));
}
