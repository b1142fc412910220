fn main() -> std::process::ExitCode {
    univgraph::cli::main()
}
