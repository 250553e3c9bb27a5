use std::io::Write;

fn main() {
    let out = gradiv::cli::run_args(std::env::args_os());
    // A closed pipe (e.g. `| head`) is not an error worth a panic.
    let _ = writeln!(std::io::stdout(), "{}", out.stdout.trim_end());
    std::process::exit(out.code);
}
