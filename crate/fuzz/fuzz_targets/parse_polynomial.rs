#![no_main]

use libfuzzer_sys::fuzz_target;
use monoweyl::{parse_polynomial, Mode};

fuzz_target!(|data: &str| {
    if let Ok(p) = parse_polynomial(data, Mode::Rational) {
        let again = parse_polynomial(&p.to_string(), Mode::Rational).expect("printed polynomial parses");
        assert_eq!(again, p);
    }
});
