fn main() {
    std::process::exit(hkpot::cli::main_with_args(std::env::args_os()));
}
