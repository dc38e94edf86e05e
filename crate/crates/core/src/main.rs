fn main() {
    let argv: Vec<String> = std::env::args().collect();
    std::process::exit(hopes::cli::run(&argv));
}
