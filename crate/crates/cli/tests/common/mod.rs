#![allow(dead_code)]

use std::path::PathBuf;
use std::process::Command;

pub fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn ncdef(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_ncdef"))
        .args(args)
        .env_remove("NCDEF_BUDGET")
        .output()
        .expect("binary runs");
    Run {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).expect("utf-8"),
        stderr: String::from_utf8(out.stderr).expect("utf-8"),
    }
}

pub fn ncdef_on(fixture_name: &str, args: &[&str]) -> Run {
    let path = fixture(fixture_name);
    let mut all = vec!["--input", path.as_str()];
    all.extend_from_slice(args);
    ncdef(&all)
}
