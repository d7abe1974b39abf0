#![no_main]

use girth_forge::group::FiniteGroup;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|text: &str| {
    if let Ok(g) = FiniteGroup::parse(text) {
        let again = FiniteGroup::parse(&g.to_text()).expect("printed table parses");
        assert_eq!(again.order(), g.order());
    }
});
