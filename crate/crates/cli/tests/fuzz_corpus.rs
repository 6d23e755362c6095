//! Replays the checked-in fuzz seeds through the same invariants the fuzz
//! targets assert, so they run on a stable toolchain too.

use gen_series::parse_series_dump;
use maninlab::config::MAX_Q;
use maninlab::{parse_q_list, parse_selector, Selector};
use std::path::PathBuf;
use variety_model::{descriptor_to_json, parse_descriptor};

fn seeds(target: &str) -> Vec<(PathBuf, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<_> = std::fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|entry| {
            let path = entry.unwrap().path();
            let text = std::fs::read_to_string(&path).unwrap();
            (path, text)
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

#[test]
fn descriptor_seeds_round_trip() {
    let mut parsed = 0;
    for (path, text) in seeds("descriptor") {
        let Ok(v) = parse_descriptor(&text) else { continue };
        let json = descriptor_to_json(&v);
        let again = parse_descriptor(&json.to_string()).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert_eq!(descriptor_to_json(&again), json, "{}", path.display());
        parsed += 1;
    }
    assert!(parsed >= 3);
}

#[test]
fn series_dump_seeds_round_trip() {
    for (path, text) in seeds("series_dump") {
        let s = parse_series_dump(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert_eq!(parse_series_dump(&s.to_json().to_string()).unwrap(), s);
    }
}

#[test]
fn selector_seeds() {
    let mut loaded = 0;
    for (_, text) in seeds("selector") {
        if let Ok(sel) = parse_selector(&text) {
            if !matches!(sel, Selector::Path(_)) {
                loaded += sel.load().is_ok() as usize;
            }
        }
    }
    assert!(loaded >= 3);
}

#[test]
fn q_list_seeds() {
    let mut ok = 0;
    for (_, text) in seeds("q_list") {
        if let Ok(qs) = parse_q_list(&text) {
            assert!(!qs.is_empty() && qs.iter().all(|&q| (2..=MAX_Q).contains(&q)));
            ok += 1;
        }
    }
    assert_eq!(ok, 3);
}
