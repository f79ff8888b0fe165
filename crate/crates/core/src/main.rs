fn main() {
    std::process::exit(holant::cli::run());
}
