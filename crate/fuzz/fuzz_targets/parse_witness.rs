#![no_main]

use jordan_core::corpus::example2;
use jordan_core::deciders::verify_witness;
use jordan_core::report::{parse_witness_file, witness_elements};
use jordan_core::PrimeField;
use libfuzzer_sys::fuzz_target;

// Witness files are checked against F1 + Fe12 over F_3; any parsed witness
// must either be rejected cleanly or verify without panicking.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(file) = parse_witness_file(text) else { return };
    let a = example2(PrimeField::new(3).unwrap());
    if let Some(w) = file.witness() {
        if let Ok(w) = witness_elements(&a, w) {
            let _ = verify_witness(&a, &w, 1000);
        }
    }
});
