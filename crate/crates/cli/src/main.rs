use std::process::ExitCode;

fn main() -> ExitCode {
    let code = dipcoh_cli::run(
        std::env::args_os(),
        std::env::var_os(dipcoh_cli::config::CONFIG_ENV),
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
    );
    ExitCode::from(code)
}
