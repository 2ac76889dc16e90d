use std::process::ExitCode;

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    let (output, code) = satlab_cli::run(&args);
    print!("{output}");
    ExitCode::from(code)
}
