fn main() {
    std::process::exit(schwarz_radius::cli::main_entry());
}
