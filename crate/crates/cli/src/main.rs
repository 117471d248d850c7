fn main() {
    std::process::exit(orbitquad_cli::main_with(std::env::args_os()));
}
