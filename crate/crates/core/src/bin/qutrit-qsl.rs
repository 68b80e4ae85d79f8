fn main() {
    std::process::exit(qutrit_qsl::cli::main_with_args(std::env::args_os()));
}
