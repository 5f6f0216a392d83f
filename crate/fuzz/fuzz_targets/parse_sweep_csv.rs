#![no_main]

use bon_experiments::{parse_sweep_csv, write_sweep_csv};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(rows) = parse_sweep_csv(text) else { return };
    // rows that break a report invariant are refused at emission
    if let Ok(emitted) = write_sweep_csv(&rows) {
        let back = parse_sweep_csv(&emitted).expect("re-parse of emitted csv");
        assert_eq!(back, rows);
        assert_eq!(write_sweep_csv(&back).unwrap(), emitted);
    }
});
