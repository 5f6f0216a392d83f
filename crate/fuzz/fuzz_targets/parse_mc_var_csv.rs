#![no_main]

use bon_experiments::{parse_mc_var_csv, write_mc_var_csv};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(rows) = parse_mc_var_csv(text) else { return };
    let emitted = write_mc_var_csv(&rows);
    assert_eq!(parse_mc_var_csv(&emitted).expect("re-parse of emitted csv"), rows);
});
