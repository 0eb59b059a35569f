use std::process::ExitCode;

fn main() -> ExitCode {
    let outcome = rc_lab_cli::run(std::env::args_os());
    if !outcome.stdout.is_empty() {
        print!("{}", outcome.stdout);
    }
    if !outcome.stderr.is_empty() {
        eprint!("{}", outcome.stderr);
    }
    ExitCode::from(outcome.code)
}
