#![no_main]

use gen_series::parse_series_dump;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    if let Ok(s) = parse_series_dump(data) {
        let again = parse_series_dump(&s.to_json().to_string()).expect("re-parse of written dump");
        assert_eq!(again, s);
    }
});
