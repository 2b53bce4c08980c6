//! Replays the checked-in fuzz seeds through the same invariants the fuzz
//! targets assert, so they run under `cargo test` on stable.

use std::path::PathBuf;

use jordan_core::corpus::example2;
use jordan_core::deciders::verify_witness;
use jordan_core::format::{canonical_coefficient, parse_algebra};
use jordan_core::report::{parse_witness_file, witness_elements};
use jordan_core::{FieldDesc, PrimeField};

fn seeds(target: &str) -> Vec<(String, Vec<u8>)> {
    let dir: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "fuzz", "corpus", target].iter().collect();
    let mut out: Vec<(String, Vec<u8>)> = std::fs::read_dir(&dir)
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            (e.file_name().to_string_lossy().into_owned(), std::fs::read(e.path()).unwrap())
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

#[test]
fn algebra_seeds() {
    let mut accepted = 0;
    for (name, data) in seeds("parse_algebra") {
        let text = String::from_utf8(data).unwrap();
        if let Ok(a) = parse_algebra(&text) {
            let json = a.to_json();
            assert_eq!(parse_algebra(&json).unwrap(), a, "{name}");
            accepted += 1;
        }
    }
    assert_eq!(accepted, 5);
}

#[test]
fn coefficient_seeds() {
    for (name, data) in seeds("parse_coefficient") {
        let Some((&pick, rest)) = data.split_first() else { continue };
        let field = match pick % 5 {
            0 => FieldDesc::Rationals,
            1 => FieldDesc::PrimeField { p: 3 },
            2 => FieldDesc::PrimeField { p: 5 },
            3 => FieldDesc::PrimeField { p: 101 },
            _ => FieldDesc::PrimeField { p: 2_147_483_647 },
        };
        if let Ok(c) = canonical_coefficient(field, std::str::from_utf8(rest).unwrap()) {
            assert_eq!(canonical_coefficient(field, &c).unwrap(), c, "{name}");
        }
    }
}

#[test]
fn witness_seeds() {
    let a = example2(PrimeField::new(3).unwrap());
    let mut verified = Vec::new();
    for (name, data) in seeds("parse_witness") {
        let Ok(file) = parse_witness_file(std::str::from_utf8(&data).unwrap()) else { continue };
        if let Some(w) = file.witness() {
            if let Ok(w) = witness_elements(&a, w) {
                if verify_witness(&a, &w, 1000).unwrap_or(false) {
                    verified.push(name);
                }
            }
        }
    }
    assert_eq!(verified, ["e2_nondeg_report.json", "trivial.json"]);
}
