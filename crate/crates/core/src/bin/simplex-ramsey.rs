fn main() {
    std::process::exit(simplex_ramsey::cli::main());
}
