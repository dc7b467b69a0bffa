fn main() -> std::process::ExitCode {
    albertctl::cli::main()
}
