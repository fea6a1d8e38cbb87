//! Byte-for-byte comparison of `verify-all` output with the checked-in
//! golden files. Set `MGFILT_UPDATE_GOLDEN=1` to rewrite them.

use std::path::PathBuf;

use mgfilt_cli::{emit, parse_spec, run, Format};

const SPECS: [&str; 5] = ["semigroup", "non-cm", "square-parameter", "square-cube", "closure-pair"];

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn check(name: &str, format: Format, ext: &str) {
    let text = std::fs::read_to_string(root().join("specs").join(format!("{name}.spec"))).unwrap();
    let doc = parse_spec(&text).unwrap();
    let bundle = run(&doc, None, doc.settings).unwrap();
    let actual = emit(&bundle, format);
    let path = root().join("tests").join("golden").join(format!("{name}.{ext}"));
    if std::env::var_os("MGFILT_UPDATE_GOLDEN").is_some() {
        std::fs::create_dir_all(path.parent().unwrap()).unwrap();
        std::fs::write(&path, &actual).unwrap();
        return;
    }
    let expected = std::fs::read(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert!(
        actual == expected,
        "{} differs from the current output:\n{}",
        path.display(),
        String::from_utf8_lossy(&actual)
    );
}

#[test]
fn structured_golden_files() {
    for name in SPECS {
        check(name, Format::Structured, "json");
    }
}

#[test]
fn table_golden_files() {
    for name in SPECS {
        check(name, Format::Table, "txt");
    }
}
