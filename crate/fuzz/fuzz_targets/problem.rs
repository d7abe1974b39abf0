#![no_main]

use girth_forge::search::Problem;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|text: &str| {
    if let Ok(p) = text.parse::<Problem>() {
        assert_eq!(p.to_string().parse::<Problem>().ok(), Some(p));
    }
});
