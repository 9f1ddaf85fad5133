fn main() {
    std::process::exit(equiosc::cli::run(std::env::args_os()));
}
