#![no_main]

use girth_forge::search::SearchConfig;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|text: &str| {
    let _ = SearchConfig::parse(text);
});
