fn main() -> std::process::ExitCode {
    lrbound::cli::main()
}
