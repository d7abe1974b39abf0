#![no_main]

use girth_forge::graph::{parse_graph_file, SimpleGraph};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|text: &str| {
    if let Ok(g) = SimpleGraph::from_graph6(text) {
        let again = SimpleGraph::from_graph6(&g.to_graph6()).expect("encoded graph decodes");
        assert_eq!(again.to_graph6(), g.to_graph6());
    }
    let _ = parse_graph_file(text);
});
