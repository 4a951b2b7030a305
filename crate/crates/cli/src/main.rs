use std::io::Write;

fn main() {
    let (result, as_json) = detcone_cli::run(std::env::args_os());
    let out = result.render(as_json);
    // A closed pipe is not worth a panic.
    let _ = if result.exit_code == detcone_cli::EXIT_USAGE {
        writeln!(std::io::stderr(), "{out}")
    } else {
        writeln!(std::io::stdout(), "{out}")
    };
    std::process::exit(result.exit_code);
}
