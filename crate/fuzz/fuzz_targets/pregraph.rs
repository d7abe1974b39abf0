#![no_main]

use girth_forge::pregraph::Pregraph;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|text: &str| {
    if let Ok(g) = Pregraph::parse(text) {
        let again = Pregraph::parse(&g.to_text()).expect("printed pregraph parses");
        assert_eq!(again.to_text(), g.to_text());
    }
    let _ = Pregraph::parse_many(text);
});
