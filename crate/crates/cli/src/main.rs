use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let outcome = sumset_cli::run(std::env::args_os());
    if !outcome.stdout.is_empty() {
        let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
    }
    if !outcome.stderr.is_empty() {
        eprintln!("{}", outcome.stderr.trim_end());
    }
    if let Some(path) = &outcome.output {
        eprintln!("report written to {}", path.display());
    }
    ExitCode::from(outcome.status as u8)
}
