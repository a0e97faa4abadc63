//! Schema-1 JSON reports of the corpus, frozen under `tests/golden/`.
//! Set `CURVELAT_BLESS=1` to rewrite them after an intended change.

mod common;

use std::path::PathBuf;

use common::{config, CORPUS};
use curvelat::cli::{run, SCHEMA_VERSION};

fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(format!("{name}.json"))
}

#[test]
fn corpus_reports_match_golden_files() {
    let bless = std::env::var_os("CURVELAT_BLESS").is_some();
    let mut stale = Vec::new();
    for name in CORPUS {
        let json = run(&config(name)).unwrap().to_json();
        let path = golden_path(name);
        if bless {
            std::fs::write(&path, &json).unwrap();
            continue;
        }
        let want = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing {}", path.display()));
        if want != json {
            stale.push(name);
        }
    }
    assert!(stale.is_empty(), "reports differ from golden files: {stale:?}");
}

#[test]
fn golden_files_carry_the_schema_version() {
    for name in CORPUS {
        let text = std::fs::read_to_string(golden_path(name)).unwrap();
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["schema"], SCHEMA_VERSION, "{name}");
        assert!(!v["checks"].as_array().unwrap().is_empty(), "{name}");
    }
}

#[test]
fn reports_are_deterministic() {
    for name in ["cusp34_wedge", "d4", "ordinary3"] {
        let cfg = config(name);
        assert_eq!(run(&cfg).unwrap().to_json(), run(&cfg).unwrap().to_json(), "{name}");
    }
}
