use std::io::Write;

use clap::error::ErrorKind;

fn main() {
    let result = match realalg_cli::parse(std::env::args_os()) {
        Ok(cli) => realalg_cli::execute(&cli.command),
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => e.exit(),
        Err(_) => realalg_cli::run(std::env::args_os()),
    };
    // a closed stdout is not worth a panic
    let _ = writeln!(std::io::stdout().lock(), "{}", result.to_json_string());
    std::process::exit(result.exit_code());
}
