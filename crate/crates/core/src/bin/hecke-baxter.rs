use std::process::ExitCode;

fn main() -> ExitCode {
    hecke_baxter::cli::main_entry()
}
