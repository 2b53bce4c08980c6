#![no_main]

use jordan_core::format::canonical_coefficient;
use jordan_core::FieldDesc;
use libfuzzer_sys::fuzz_target;

// The first byte picks the field; canonical forms are fixed points.
fuzz_target!(|data: &[u8]| {
    let Some((&pick, rest)) = data.split_first() else { return };
    let field = match pick % 5 {
        0 => FieldDesc::Rationals,
        1 => FieldDesc::PrimeField { p: 3 },
        2 => FieldDesc::PrimeField { p: 5 },
        3 => FieldDesc::PrimeField { p: 101 },
        _ => FieldDesc::PrimeField { p: 2_147_483_647 },
    };
    let Ok(text) = std::str::from_utf8(rest) else { return };
    if let Ok(c) = canonical_coefficient(field, text) {
        assert_eq!(canonical_coefficient(field, &c).expect("canonical form parses"), c);
    }
});
