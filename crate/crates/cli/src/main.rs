fn main() {
    std::process::exit(lpgeom_cli::main_with_args(std::env::args_os()));
}
