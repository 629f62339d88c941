fn main() {
    let outcome = posskit::cli::run_args(std::env::args_os());
    print!("{}", outcome.stdout);
    std::process::exit(outcome.code);
}
