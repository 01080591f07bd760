//! Frozen instance streams: the generator must reproduce these measures
//! exactly on every platform. Set `MOMENTROOT_BLESS=1` to regenerate.

use std::path::PathBuf;

use momentroot::measures::MeasureFile;
use momentroot::{random_atomic_measure, GenParams};
use serde_json::{json, Value};

const CASES: [(u64, u64); 6] = [(42, 0), (42, 1), (42, 2), (42, 1000), (0, 0), (7, 3)];

fn golden_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden/random_measures.json")
}

fn current() -> Value {
    let entries: Vec<Value> = CASES
        .iter()
        .map(|&(seed, index)| {
            let m = random_atomic_measure(&GenParams::with_seed(seed), index);
            json!({ "seed": seed, "index": index, "measure": MeasureFile::from(&m) })
        })
        .collect();
    json!({ "params": GenParams::default(), "cases": entries })
}

#[test]
fn random_measures_match_golden_file() {
    let now = current();
    if std::env::var_os("MOMENTROOT_BLESS").is_some() {
        let text = serde_json::to_string_pretty(&now).unwrap() + "\n";
        std::fs::write(golden_path(), text).unwrap();
    }
    let text = std::fs::read_to_string(golden_path()).expect("golden file present");
    let frozen: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(frozen, now);
}

#[test]
fn seed_42_streams_differ() {
    let p = GenParams::with_seed(42);
    assert_ne!(random_atomic_measure(&p, 0), random_atomic_measure(&p, 1));
}
