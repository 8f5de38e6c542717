use std::path::PathBuf;

use cfaccel_core::series::catalog::catalog;
use cfaccel_core::series::parse_series;

fn dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../series")
}

#[test]
fn shipped_files_match_the_catalog() {
    let entries = catalog();
    let mut files: Vec<_> = std::fs::read_dir(dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "series"))
        .collect();
    files.sort();
    assert_eq!(files.len(), entries.len());
    for e in &entries {
        let path = dir().join(format!("{}.series", e.term.name));
        let parsed = parse_series(&std::fs::read_to_string(&path).unwrap()).unwrap();
        assert_eq!(parsed, e.term, "{}", path.display());
    }
}
