#![allow(dead_code)]

use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

pub fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

/// The `vida` binary, run from the repository root with no ambient config.
pub fn vida(args: &[&str]) -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_vida"));
    cmd.args(args)
        .current_dir(root())
        .env_remove("VIDA_CONFIG")
        .env_remove("RUST_LOG");
    cmd
}

pub fn run(args: &[&str]) -> Output {
    vida(args).output().expect("vida runs")
}

pub fn run_with_stdin(args: &[&str], stdin: &str) -> Output {
    let mut child = vida(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("vida runs");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

pub fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

pub fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}
