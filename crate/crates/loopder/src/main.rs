use std::io::Write;

fn main() {
    let outcome = loopder::run(std::env::args_os().skip(1));
    print!("{}", outcome.stdout);
    eprint!("{}", outcome.stderr);
    let _ = std::io::stdout().flush();
    std::process::exit(outcome.code);
}
