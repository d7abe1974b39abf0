#![no_main]

use girth_forge::runner::parse_jobs;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|text: &str| {
    let _ = parse_jobs(text);
});
