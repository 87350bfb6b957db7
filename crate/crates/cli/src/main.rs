use std::io::Write;

fn main() {
    let (stdout, stderr, code) = polyfract_cli::commands::main_with_args(std::env::args_os());
    print!("{stdout}");
    eprint!("{stderr}");
    let _ = std::io::stdout().flush();
    std::process::exit(code);
}
