use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let (status, stdout, stderr) = rootavg::cli::execute(std::env::args_os());
    print!("{stdout}");
    eprint!("{stderr}");
    let _ = std::io::stdout().flush();
    ExitCode::from(status as u8)
}
