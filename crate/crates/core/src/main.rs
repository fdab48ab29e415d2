fn main() {
    std::process::exit(sparsity::cli::parse_and_dispatch(std::env::args_os()));
}
