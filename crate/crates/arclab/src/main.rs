fn main() {
    std::process::exit(arclab::run(std::env::args_os()));
}
