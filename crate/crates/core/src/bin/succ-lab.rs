fn main() {
    std::process::exit(succ_lab::cli::main());
}
