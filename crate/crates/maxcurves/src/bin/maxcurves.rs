fn main() {
    std::process::exit(maxcurves::cli::run(std::env::args()));
}
