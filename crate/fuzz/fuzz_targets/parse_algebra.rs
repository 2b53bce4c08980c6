#![no_main]

use jordan_core::format::parse_algebra;
use libfuzzer_sys::fuzz_target;

// Accepted files must survive a save/load round trip unchanged.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(a) = parse_algebra(text) {
        let json = a.to_json();
        let b = parse_algebra(&json).expect("saved file reloads");
        assert_eq!(a, b);
        assert_eq!(b.to_json(), json);
    }
});
