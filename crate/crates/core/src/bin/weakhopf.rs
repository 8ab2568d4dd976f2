fn main() {
    std::process::exit(weakhopf::cli::main());
}
