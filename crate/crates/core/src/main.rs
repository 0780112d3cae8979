fn main() {
    std::process::exit(elliptic_cauchy::cli::main_with_args(std::env::args_os().skip(1)));
}
