fn main() {
    let args: Vec<String> = std::env::args().collect();
    std::process::exit(hirzebruch_core::cli::run(&args));
}
