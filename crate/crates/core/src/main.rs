fn main() {
    std::process::exit(cesaro_spaces::cli::dispatch(std::env::args_os()));
}
