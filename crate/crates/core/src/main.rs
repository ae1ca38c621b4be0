use clap::Parser;

fn main() {
    std::process::exit(reclab::cli::execute(reclab::cli::Cli::parse()));
}
