use std::io::Write;

use clap::Parser;
use sololab::cli::{execute, Cli};

fn main() {
    let out = execute(Cli::parse());
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(out.stdout.as_bytes());
    let _ = stdout.flush();
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    std::process::exit(out.exit_code);
}
