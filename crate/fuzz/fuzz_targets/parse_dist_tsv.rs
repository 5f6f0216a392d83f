#![no_main]

use bon_core::dist_file::{parse_distribution, parse_distribution_bytes, write_distribution};
use bon_core::validate_policy;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(outcomes) = parse_distribution_bytes(data) else { return };
    let again = parse_distribution(&write_distribution(&outcomes)).expect("re-parse of emitted file");
    assert_eq!(again, outcomes);
    if let Ok(p) = validate_policy(outcomes) {
        let total: f64 = p.probs().iter().sum();
        assert!((total - 1.0).abs() < 1e-9);
        assert!(p.rewards().zip(p.rewards().skip(1)).all(|(a, b)| a < b));
    }
});
