fn main() {
    std::process::exit(stframe::cli::run());
}
