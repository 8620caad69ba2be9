use clap::Parser;

fn main() {
    let cli = spinlens_cli::Cli::parse();
    std::process::exit(spinlens_cli::run(cli));
}
