fn main() {
    std::process::exit(commgraph_cli::run(std::env::args_os()));
}
