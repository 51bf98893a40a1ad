fn main() -> std::process::ExitCode {
    nlgs::cli::main()
}
