#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

pub fn stegkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stegkit"))
        .args(args)
        .output()
        .expect("spawn stegkit")
}

pub fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

pub fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

pub fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

/// Copies the shipped corpus into `dest` so runs never write into the repo.
pub fn copy_corpus(dest: &Path) {
    for entry in std::fs::read_dir(corpus_dir()).expect("corpus dir") {
        let entry = entry.unwrap();
        if entry.file_type().unwrap().is_file() {
            std::fs::copy(entry.path(), dest.join(entry.file_name())).unwrap();
        }
    }
}

pub fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}
