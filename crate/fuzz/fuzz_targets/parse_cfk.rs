#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(c) = floerkit::complex::parse(text) {
            let again = floerkit::complex::serialize(&c);
            assert_eq!(floerkit::complex::parse(&again).ok(), Some(c));
        }
    }
});
