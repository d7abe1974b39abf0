#![no_main]

use girth_forge::group::cyclic;
use girth_forge::pregraph::Pregraph;
use girth_forge::voltage::VoltageAssignment;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|text: &str| {
    let g = Pregraph::parse("pregraph 2\n0 1\n0 0\n1 1\n").unwrap();
    let c5 = cyclic(5).unwrap();
    if let Ok((alpha, id)) = VoltageAssignment::parse(text, &g, &c5) {
        let printed = alpha.to_text(&g, &id, &c5);
        let (again, _) = VoltageAssignment::parse(&printed, &g, &c5).expect("printed assignment parses");
        assert_eq!(again.to_text(&g, &id, &c5), printed);
    }
});
