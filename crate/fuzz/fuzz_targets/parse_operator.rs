#![no_main]

use libfuzzer_sys::fuzz_target;
use monoweyl::{parse_operator, Mode};

fuzz_target!(|data: &str| {
    for mode in [Mode::Natural, Mode::Rational] {
        if let Ok(t) = parse_operator(data, mode) {
            // the printed form must parse back to the same operator
            let again = parse_operator(&t.to_string(), mode).expect("printed operator parses");
            assert_eq!(again, t);
        }
    }
});
