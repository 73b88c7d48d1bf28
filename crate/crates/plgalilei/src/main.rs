fn main() {
    std::process::exit(plgalilei::cli::run());
}
