#![no_main]

use girth_forge::catalog::{Catalog, CatalogEntry};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|text: &str| {
    if let Ok(e) = CatalogEntry::parse_line(text) {
        let _ = e.verify();
    }
    let _ = Catalog::parse(text);
});
