//! The acceptance criteria, one line each. Runs as a plain binary (no test
//! harness) so the lines are printed even when everything passes.

use std::process::Command;
use std::time::{Duration, Instant};

use bigrade::catalog;
use bigrade::verify::{self, Fact, Settings};

struct Criterion {
    label: &'static str,
    limit: Option<Duration>,
    run: fn(&Settings) -> Vec<Fact>,
}

fn catalogs() -> Vec<(String, Vec<catalog::CatalogEntry>)> {
    catalog::default_catalog().expect("default catalog loads")
}

fn full_run(_: &Settings) -> Vec<Fact> {
    let out = Command::new(env!("CARGO_BIN_EXE_bigrade"))
        .args(["--json", "verify-paper", "--scope", "all"])
        .env_remove("BIGRADE_CATALOG_DIR")
        .output()
        .expect("binary runs");
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap_or_default();
    let failed: Vec<String> = report["payload"]["facts"]
        .as_array()
        .map(|fs| {
            fs.iter()
                .filter(|f| f["passed"] != true)
                .map(|f| f["anchor"].as_str().unwrap_or("?").to_owned())
                .collect()
        })
        .unwrap_or_default();
    let total = report["payload"]["total"].as_u64().unwrap_or(0);
    vec![Fact {
        area: verify::Area::Catalog,
        anchor: "verify-paper --scope all exits 0".into(),
        passed: out.status.code() == Some(0) && failed.is_empty() && total > 0,
        checks: total as usize,
        detail: if failed.is_empty() {
            format!("{total} facts")
        } else {
            failed.join("; ")
        },
    }]
}

fn structural(s: &Settings) -> Vec<Fact> {
    let mut out = verify::grading_suite(s);
    out.extend(verify::words_suite(s));
    out.extend(verify::magnus_suite(s));
    out.extend(verify::freelie_suite(s));
    out.extend(verify::filtration_suite(s));
    out
}

fn main() {
    let s = Settings::default();
    let criteria = [
        Criterion {
            label: "1 worked values",
            limit: Some(Duration::from_secs(1)),
            run: |_| verify::worked_values(),
        },
        Criterion {
            label: "2 first Johnson images of twist elements, g = 3",
            limit: Some(Duration::from_secs(10)),
            run: |_| verify::twist_wedges(4),
        },
        Criterion {
            label: "3 leading terms and spanning, p,q <= 2, m+n <= 5",
            limit: Some(Duration::from_secs(120)),
            run: |_| verify::leading_term_oracle(2, 5),
        },
        Criterion {
            label: "4 Johnson compatibility on the default catalog",
            limit: None,
            run: |s| verify::compatibility(&catalogs(), s, 3, 3),
        },
        Criterion {
            label: "5 Magnus generator classification",
            limit: None,
            run: verify::magnus_classification,
        },
        Criterion {
            label: "6 Torelli reconstruction",
            limit: None,
            run: |_| verify::torelli_reconstruction(&catalogs()),
        },
        Criterion {
            label: "7a structural property suites",
            limit: None,
            run: structural,
        },
        Criterion {
            label: "7b full verification run",
            limit: Some(Duration::from_secs(300)),
            run: full_run,
        },
    ];

    let mut all = true;
    for c in &criteria {
        let t = Instant::now();
        let facts = (c.run)(&s);
        let took = t.elapsed();
        let failed: Vec<&Fact> = facts.iter().filter(|f| !f.passed).collect();
        let in_time = c.limit.is_none_or(|l| took <= l);
        let ok = failed.is_empty() && !facts.is_empty() && in_time;
        all &= ok;
        let checks: usize = facts.iter().map(|f| f.checks).sum();
        let limit = c.limit.map(|l| format!(" (limit {}s)", l.as_secs())).unwrap_or_default();
        println!(
            "{} criterion {}: {} facts, {checks} checks, {:.2}s{limit}",
            if ok { "PASS" } else { "FAIL" },
            c.label,
            facts.len(),
            took.as_secs_f64()
        );
        for f in failed {
            println!("     failed: {}: {}", f.anchor, f.detail);
        }
        if !in_time {
            println!("     over the time limit");
        }
    }
    if !all {
        std::process::exit(1);
    }
}
