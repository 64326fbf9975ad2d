use std::io::Write;

use incidence_lab::cli;

fn main() {
    let outcome = match cli::configure_threads() {
        Ok(()) => cli::run_args(std::env::args_os()),
        Err(outcome) => outcome,
    };
    print!("{}", outcome.stdout);
    eprint!("{}", outcome.stderr);
    let _ = std::io::stdout().flush();
    std::process::exit(outcome.code);
}
