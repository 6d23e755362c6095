#![no_main]

use libfuzzer_sys::fuzz_target;
use maninlab::config::MAX_Q;
use maninlab::parse_q_list;

fuzz_target!(|data: &str| {
    if let Ok(qs) = parse_q_list(data) {
        assert!(!qs.is_empty());
        assert!(qs.iter().all(|&q| (2..=MAX_Q).contains(&q)));
    }
});
