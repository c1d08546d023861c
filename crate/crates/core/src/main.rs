fn main() {
    let code = periodic_law::cli::run(std::env::args_os());
    std::process::exit(code);
}
