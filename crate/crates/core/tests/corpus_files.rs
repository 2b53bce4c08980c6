use std::path::PathBuf;

use jordan_core::corpus::entries;
use jordan_core::format::load;

fn corpus_dir() -> PathBuf {
    [env!("CARGO_MANIFEST_DIR"), "..", "..", "corpus"].iter().collect()
}

#[test]
fn data_files_match_constructors() {
    let dir = corpus_dir();
    let mut shipped: Vec<String> = std::fs::read_dir(&dir)
        .unwrap()
        .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
        .filter(|n| n.ends_with(".json"))
        .collect();
    shipped.sort();
    let mut expected: Vec<String> = entries().iter().map(|e| format!("{}.json", e.id)).collect();
    expected.sort();
    assert_eq!(shipped, expected);

    for e in entries() {
        let path = dir.join(format!("{}.json", e.id));
        let built = e.build().unwrap();
        assert_eq!(std::fs::read_to_string(&path).unwrap(), built.to_json(), "{}", e.id);
        assert_eq!(load(&path).unwrap(), built, "{}", e.id);
    }
}
