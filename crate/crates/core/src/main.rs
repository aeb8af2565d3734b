use clap::Parser;

use rss_lb::cli::{run, Cli};
use rss_lb::sweep::configure_threads_from_env;

fn main() {
    configure_threads_from_env();
    let cli = Cli::parse();
    std::process::exit(run(cli));
}
