#![no_main]

use libfuzzer_sys::fuzz_target;
use maninlab::{parse_selector, Selector};

fuzz_target!(|data: &str| {
    // Built-in selectors are loaded too; paths are not touched.
    match parse_selector(data) {
        Ok(Selector::Path(_)) | Err(_) => {}
        Ok(sel) => drop(sel.load()),
    }
});
