fn main() {
    std::process::exit(sl2lift::cli::run());
}
