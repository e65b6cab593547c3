fn main() {
    std::process::exit(poincare_seqtest::cli::main_with_args(std::env::args_os()));
}
