//! Replays the checked-in fuzz seeds through the same properties the fuzz
//! targets assert, so the corpus stays meaningful without a fuzzing toolchain.

use std::path::PathBuf;

use bon_core::dist_file::{parse_distribution, parse_distribution_bytes, write_distribution};
use bon_experiments::{parse_mc_var_csv, parse_sweep_csv, write_mc_var_csv, write_sweep_csv, BuiltinScenario, NGrid};

fn seeds(target: &str) -> Vec<(PathBuf, Vec<u8>)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<_> = std::fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| e.unwrap().path())
        .map(|p| {
            let bytes = std::fs::read(&p).unwrap();
            (p, bytes)
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

#[test]
fn dist_tsv_seeds() {
    let mut accepted = 0;
    for (path, bytes) in seeds("parse_dist_tsv") {
        if let Ok(outcomes) = parse_distribution_bytes(&bytes) {
            accepted += 1;
            let again = parse_distribution(&write_distribution(&outcomes)).unwrap();
            assert_eq!(again, outcomes, "{}", path.display());
        }
    }
    assert!(accepted > 0);
}

#[test]
fn sweep_csv_seeds() {
    for (path, bytes) in seeds("parse_sweep_csv") {
        let text = std::str::from_utf8(&bytes).unwrap();
        let rows = parse_sweep_csv(text).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert_eq!(write_sweep_csv(&rows).unwrap(), text, "{}", path.display());
    }
}

#[test]
fn mc_var_csv_seeds() {
    for (_, bytes) in seeds("parse_mc_var_csv") {
        let Ok(text) = std::str::from_utf8(&bytes) else { continue };
        if let Ok(rows) = parse_mc_var_csv(text) {
            assert_eq!(write_mc_var_csv(&rows), text);
        }
    }
}

#[test]
fn grid_and_builtin_seeds() {
    for (_, bytes) in seeds("parse_grid_spec") {
        if let Ok(g) = std::str::from_utf8(&bytes).unwrap().parse::<NGrid>() {
            assert_eq!(g.to_string().parse::<NGrid>().unwrap(), g);
        }
    }
    for (_, bytes) in seeds("parse_builtin_name") {
        if let Ok(s) = std::str::from_utf8(&bytes).unwrap().parse::<BuiltinScenario>() {
            assert_eq!(s.to_string().parse::<BuiltinScenario>().unwrap(), s);
        }
    }
}
