fn main() {
    std::process::exit(primefrac::cli::main_entry());
}
