#![no_main]

use libfuzzer_sys::fuzz_target;

// NUL-separated argument lists
fuzz_target!(|data: &str| {
    let args: Vec<&str> = data.split('\0').take(8).collect();
    let out = monoweyl::cli::run(std::iter::once("monoweyl").chain(args));
    assert!(out.code <= 2);
});
