use std::process::ExitCode;

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let (code, output) = dyadic_grids_cli::run(&args);
    print!("{output}");
    ExitCode::from(code as u8)
}
