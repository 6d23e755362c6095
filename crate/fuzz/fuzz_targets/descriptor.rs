#![no_main]

use libfuzzer_sys::fuzz_target;
use variety_model::{descriptor_to_json, parse_descriptor};

fuzz_target!(|data: &str| {
    let Ok(v) = parse_descriptor(data) else { return };
    // Whatever parses must survive a round trip unchanged.
    let json = descriptor_to_json(&v);
    let again = parse_descriptor(&json.to_string()).expect("re-parse of serialised descriptor");
    assert_eq!(descriptor_to_json(&again), json);
});
