use std::io::Write;

fn main() {
    let outcome = lukstable_cli::run(std::env::args_os());
    print!("{}", outcome.stdout);
    eprint!("{}", outcome.stderr);
    std::io::stdout().flush().ok();
    std::process::exit(outcome.exit_code);
}
