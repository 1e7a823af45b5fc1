#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(r) = floerkit::regions::Region::parse(text) {
            let _ = floerkit::regions::check_subquotient(&r);
        }
    }
});
