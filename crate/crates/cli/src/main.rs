fn main() {
    std::process::exit(tropgraph_cli::main_with_args(std::env::args_os()));
}
