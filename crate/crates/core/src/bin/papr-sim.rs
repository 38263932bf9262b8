use std::process::ExitCode;

fn main() -> ExitCode {
    let status = ofdm_papr::cli::cli_main(std::env::args_os());
    ExitCode::from(status as u8)
}
