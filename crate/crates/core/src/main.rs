use clap::Parser;

use ncg_forge::cli::{emit, run, Cli, EXIT_INPUT};

fn main() {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            std::process::exit(if e.use_stderr() { EXIT_INPUT } else { 0 });
        }
    };
    let o = run(&cli);
    match emit(&cli, &o) {
        Ok(s) if o.code == EXIT_INPUT => eprint!("{s}"),
        Ok(s) => print!("{s}"),
        Err(e) => {
            eprintln!("error: writing report: {e}");
            std::process::exit(EXIT_INPUT);
        }
    }
    std::process::exit(o.code);
}
