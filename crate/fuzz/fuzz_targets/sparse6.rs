#![no_main]

use girth_forge::graph::SimpleGraph;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|text: &str| {
    if let Ok(g) = SimpleGraph::from_sparse6(text) {
        let again = SimpleGraph::from_sparse6(&g.to_sparse6()).expect("encoded graph decodes");
        assert_eq!(again, g);
    }
});
