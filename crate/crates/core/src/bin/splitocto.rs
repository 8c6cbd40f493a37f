fn main() {
    std::process::exit(splitocto::cli::main_with(std::env::args_os()));
}
