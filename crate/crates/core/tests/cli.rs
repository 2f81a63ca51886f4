use std::path::PathBuf;
use std::process::{Command, Output};

fn bigrade(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bigrade"))
        .args(args)
        .env_remove("BIGRADE_CATALOG_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch_dir(tag: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("bigrade-cli-{tag}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&d);
    std::fs::create_dir_all(&d).unwrap();
    d
}

#[test]
fn worked_examples() {
    let o = bigrade(&["expand", "--word", "x1^-1", "--bound", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "1 - X1 + X1^2 - X1^3\n");
    assert_eq!(stdout(&bigrade(&["ordinal-sum", "w*2+3", "w*1+4"])), "w*3+7\n");
    assert_eq!(stdout(&bigrade(&["lie-dim", "--p", "2", "--q", "2", "--grade", "2,1"])), "8\n");
    assert_eq!(
        stdout(&bigrade(&["delta", "--word", "x1 y1 x1^-1 y1^-1", "--grade", "1,1"])),
        "X1*Y1 - Y1*X1\n"
    );
}

#[test]
fn tau_json_reports_the_wedge() {
    let o = bigrade(&["--json", "tau", "--kind", "double", "--level", "1,0", "--aut", "surface_g3:h_12"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["status"], "ok");
    assert_eq!(v["payload"]["wedge"], "a1^a2^b1");
    assert_eq!(v["payload"]["symplectic_ok"], true);

    let o = bigrade(&["--json", "tau", "--kind", "edge", "--level", "2,-1", "--aut", "surface_g3:tx_comm_123"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["payload"]["wedge"], "a1^a2^a3");
}

#[test]
fn output_is_deterministic() {
    let args = ["--json", "probe", "--aut", "surface_g3:eyeglass_comm", "--max-total", "3"];
    let a = bigrade(&args);
    let b = bigrade(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn exit_codes() {
    assert_eq!(bigrade(&[]).status.code(), Some(2));
    assert_eq!(bigrade(&["expand"]).status.code(), Some(2));
    assert_eq!(bigrade(&["expand", "--word", "x1 q2"]).status.code(), Some(2));
    assert_eq!(bigrade(&["sigma", "--aut", "no_such_entry"]).status.code(), Some(2));
    assert_eq!(bigrade(&["--json", "--text", "ordinal-sum", "1", "2"]).status.code(), Some(2));
    // parses, but the polynomial is not a Lie element
    assert_eq!(
        bigrade(&["lie-project", "--p", "1", "--q", "1", "--poly", "X1*Y1"]).status.code(),
        Some(1)
    );
    // sigma needs a boundary-fixing element
    assert_eq!(bigrade(&["sigma", "--aut", "free_p2q2:phi_x1x2"]).status.code(), Some(1));
}

#[test]
fn scoped_verification() {
    let o = bigrade(&["--json", "verify-paper", "--scope", "grading"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let facts = v["payload"]["facts"].as_array().unwrap();
    assert!(!facts.is_empty());
    assert!(facts.iter().all(|f| f["area"] == "grading"));
    assert!(facts.iter().any(|f| f["anchor"].as_str().unwrap().contains("w*3+7")));
}

#[test]
fn corrupted_catalog_is_named() {
    let dir = scratch_dir("corrupt");
    let o = bigrade(&["catalog", "export", dir.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    for f in std::fs::read_dir(&dir).unwrap() {
        let p = f.unwrap().path();
        if p.file_name().unwrap() != "surface_g2.json" {
            std::fs::remove_file(p).unwrap();
        }
    }
    let path = dir.join("surface_g2.json");
    let text = std::fs::read_to_string(&path).unwrap();
    let mut entries: serde_json::Value = serde_json::from_str(&text).unwrap();
    for e in entries.as_array_mut().unwrap() {
        if e["name"] == "h_12" {
            e["claims"]["tau1"] = "a1^a2^b2".into();
        }
    }
    std::fs::write(&path, serde_json::to_string_pretty(&entries).unwrap()).unwrap();

    let o = bigrade(&["catalog", "validate", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("FAIL") && out.contains("h_12") && out.contains("tau1"), "{out}");

    let o = Command::new(env!("CARGO_BIN_EXE_bigrade"))
        .args(["verify-paper", "--scope", "catalog"])
        .env("BIGRADE_CATALOG_DIR", &dir)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("FAIL") && out.contains("h_12: tau1"), "{out}");
    let _ = std::fs::remove_dir_all(&dir);
}
