#![no_main]

use libfuzzer_sys::fuzz_target;
use monoweyl::{parse_exponent_set, Mode};

fuzz_target!(|data: &str| {
    for mode in [Mode::Natural, Mode::Rational] {
        if let Ok(s) = parse_exponent_set(data, mode) {
            assert_eq!(parse_exponent_set(&s.to_string(), mode).unwrap(), s);
        }
    }
});
