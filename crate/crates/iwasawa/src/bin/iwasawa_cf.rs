fn main() {
    std::process::exit(iwasawa_cf::cli::main_entry());
}
