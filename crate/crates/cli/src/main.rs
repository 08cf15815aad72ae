use clap::Parser;

fn main() {
    let cli = chabauty_lab::Cli::parse();
    if let Err(e) = chabauty_lab::run(cli) {
        eprintln!("{}", e.diagnostic());
        std::process::exit(e.exit_code());
    }
}
