use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let run = ryserlab_cli::run(std::env::args_os());
    let out = std::io::stdout().write_all(run.stdout.as_bytes());
    let err = std::io::stderr().write_all(run.stderr.as_bytes());
    if out.is_err() || err.is_err() {
        return ExitCode::from(2);
    }
    ExitCode::from(run.code)
}
