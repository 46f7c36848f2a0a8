fn main() -> std::process::ExitCode {
    cantorfield::cli::main_entry()
}
