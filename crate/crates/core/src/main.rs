fn main() {
    std::process::exit(dmk3::cli::run(std::env::args_os()));
}
