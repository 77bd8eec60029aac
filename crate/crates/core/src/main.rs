fn main() {
    std::process::exit(hyperind::cli::main_with_env());
}
