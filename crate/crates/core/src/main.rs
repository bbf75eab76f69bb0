use std::process::ExitCode;

fn main() -> ExitCode {
    let status = gauge_logic::cli::run(std::env::args_os(), &mut std::io::stdout(), &mut std::io::stderr());
    ExitCode::from(status.code() as u8)
}
