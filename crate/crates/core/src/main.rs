fn main() {
    std::process::exit(uc_radius::cli::main());
}
