fn main() {
    std::process::exit(cospectra::cli::main());
}
