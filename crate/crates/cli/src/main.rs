fn main() -> std::process::ExitCode {
    dlite_cli::main_entry()
}
