#![no_main]

use bon_experiments::NGrid;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(spec) = std::str::from_utf8(data) else { return };
    let Ok(grid) = spec.parse::<NGrid>() else { return };
    let v = grid.values();
    assert!(!v.is_empty() && v[0] >= 1);
    assert!(v.windows(2).all(|w| w[0] < w[1]));
    assert_eq!(grid.to_string().parse::<NGrid>().unwrap(), grid);
});
