fn main() {
    std::process::exit(cyclic_hall::cli::run(std::env::args_os()));
}
