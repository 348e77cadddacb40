use hunl_core::skills::{bundled_dir, load_library, LoadError, SkillLibrary};
use std::fs;
use std::path::Path;

fn copy_dir(from: &Path, to: &Path) {
    fs::create_dir_all(to).unwrap();
    for e in fs::read_dir(from).unwrap() {
        let e = e.unwrap();
        let dst = to.join(e.file_name());
        if e.file_type().unwrap().is_dir() {
            copy_dir(&e.path(), &dst);
        } else {
            fs::copy(e.path(), dst).unwrap();
        }
    }
}

fn p1_files() -> Vec<String> {
    let manifest = fs::read_to_string(bundled_dir().join("manifest.toml")).unwrap();
    let v: toml::Value = toml::from_str(&manifest).unwrap();
    v["files"]["p1"].as_array().unwrap().iter().map(|s| s.as_str().unwrap().to_string()).collect()
}

#[test]
fn bundled_library_loads_clean() {
    let from_disk = load_library(bundled_dir()).unwrap();
    let embedded = SkillLibrary::bundled();
    assert_eq!(from_disk.hash(), embedded.hash());
    assert_eq!(from_disk.fragments().len(), embedded.fragments().len());
}

#[test]
fn removing_a_p1_file_fails_the_whole_load() {
    let files = p1_files();
    assert!(files.len() >= 2);
    for f in &files {
        let tmp = tempfile::tempdir().unwrap();
        copy_dir(&bundled_dir(), tmp.path());
        fs::remove_file(tmp.path().join(f)).unwrap();
        let err = load_library(tmp.path()).unwrap_err();
        assert!(matches!(&err, LoadError::Read { path, .. } if path == f), "{f}: {err}");

        // Dropping it from the manifest too still fails: both P1 slots are required.
        let manifest = tmp.path().join("manifest.toml");
        let text = fs::read_to_string(&manifest).unwrap().replace(&format!("\"{f}\", "), "").replace(&format!(", \"{f}\""), "");
        fs::write(&manifest, text).unwrap();
        let err = load_library(tmp.path()).unwrap_err();
        assert!(matches!(err, LoadError::Invalid(_)), "{f}: {err}");
    }
}

#[test]
fn broken_fragment_reports_file_and_line() {
    let tmp = tempfile::tempdir().unwrap();
    copy_dir(&bundled_dir(), tmp.path());
    let p = tmp.path().join("p3/principles.frag");
    let mut text = fs::read_to_string(&p).unwrap();
    text.push_str("\n@fragment bad.one\nlayer: P3\nslot: principles\nwhen: colour = red\n~~~\nx\n~~~\n");
    fs::write(&p, text).unwrap();
    let err = load_library(tmp.path()).unwrap_err().to_string();
    assert!(err.contains("p3/principles.frag:"), "{err}");
}

#[test]
fn edits_change_the_hash() {
    let tmp = tempfile::tempdir().unwrap();
    copy_dir(&bundled_dir(), tmp.path());
    let base = load_library(tmp.path()).unwrap().hash().to_string();
    let p = tmp.path().join("p5/river.frag");
    let text = fs::read_to_string(&p).unwrap();
    fs::write(&p, format!("# edited\n{text}")).unwrap();
    assert_ne!(load_library(tmp.path()).unwrap().hash(), base);
}
