fn main() -> std::process::ExitCode {
    expandir::cli::main()
}
