fn main() {
    std::process::exit(qcluster::cli::main_with_args(std::env::args_os()));
}
