#![no_main]

use libfuzzer_sys::fuzz_target;
use monoweyl::parse_subspace;

fuzz_target!(|data: &str| {
    if let Ok(v) = parse_subspace(data) {
        let again = parse_subspace(&v.to_string()).expect("printed subspace parses");
        assert_eq!(again.dim(), v.dim());
        assert!(v.basis().iter().all(|b| again.contains(b)));
    }
});
