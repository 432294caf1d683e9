fn main() {
    std::process::exit(geon::run(std::env::args_os()));
}
