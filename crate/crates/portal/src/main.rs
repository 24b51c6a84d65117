use clap::Parser;
use lodchem_portal::cli::{run, Cli};

fn main() -> anyhow::Result<()> {
    let cli = Cli::parse();
    match run(cli, &mut std::io::stdout().lock()) {
        // output piped into something that stopped reading
        Err(e) if e.downcast_ref::<std::io::Error>().is_some_and(|io| io.kind() == std::io::ErrorKind::BrokenPipe) => Ok(()),
        other => other,
    }
}
