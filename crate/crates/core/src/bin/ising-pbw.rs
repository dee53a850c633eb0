fn main() {
    std::process::exit(ising_pbw::cli::main());
}
