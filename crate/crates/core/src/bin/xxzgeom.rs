fn main() {
    std::process::exit(xxzgeom::cli::main());
}
