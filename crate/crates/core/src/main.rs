use clap::Parser;
use zerosample::cli::{exit_code, run, Args, RunConfig};

fn main() {
    let result = RunConfig::from_args(Args::parse()).and_then(|cfg| run(&cfg));
    if let Err(e) = result {
        eprintln!("error: {e}");
        std::process::exit(exit_code(&e));
    }
}
