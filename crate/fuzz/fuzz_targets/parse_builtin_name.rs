#![no_main]

use bon_experiments::BuiltinScenario;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(name) = std::str::from_utf8(data) else { return };
    let Ok(s) = name.parse::<BuiltinScenario>() else { return };
    assert_eq!(s.to_string().parse::<BuiltinScenario>().unwrap(), s);
    assert!(!s.slug().is_empty());
});
