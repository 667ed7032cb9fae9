fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    std::process::exit(p6_cli::main_with_args(&args));
}
