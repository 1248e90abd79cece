fn main() {
    std::process::exit(charpreg::cli::main_with_args(std::env::args_os()));
}
