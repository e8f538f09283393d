use clap::Parser;
use g2mae::cli::{self, Cli};

fn main() {
    let args = Cli::parse();
    let result = cli::run(&args);
    let code = cli::exit_code(&result);
    match &result {
        Ok(out) => print!("{}", cli::render(&args, out)),
        Err(e) => eprintln!("error: {e}"),
    }
    std::process::exit(code);
}
