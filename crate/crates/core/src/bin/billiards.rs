fn main() {
    std::process::exit(billiard_walks::cli::main());
}
