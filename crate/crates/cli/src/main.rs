use clap::Parser;

fn main() {
    let cli = mdsrel_cli::Cli::parse();
    if let Err(e) = mdsrel_cli::run(cli) {
        eprintln!("mdsrel: {e}");
        std::process::exit(e.exit_code());
    }
}
