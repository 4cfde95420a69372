fn main() {
    std::process::exit(qent4_cli::run_process());
}
