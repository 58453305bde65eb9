use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let out = uniserial::cli::run_cli(std::env::args_os());
    // A closed pipe downstream is not an error worth a panic.
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(out.stdout.as_bytes());
    if !out.stdout.is_empty() && !out.stdout.ends_with('\n') {
        let _ = stdout.write_all(b"\n");
    }
    if !out.stderr.is_empty() {
        let _ = writeln!(std::io::stderr(), "{}", out.stderr.trim_end());
    }
    ExitCode::from(out.code as u8)
}
