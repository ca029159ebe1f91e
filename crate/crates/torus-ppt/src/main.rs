fn main() {
    std::process::exit(torus_ppt::cli::run());
}
