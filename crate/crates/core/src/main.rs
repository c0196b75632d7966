fn main() {
    std::process::exit(kk_core::cli::main_with_args());
}
