use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use movingsyz_cli::{batch_exit_code, render, run, run_batch, usage_error, Cli, Format};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            // usage mistakes share the parse-error exit code
            eprint!("{}", e.render());
            return ExitCode::from(1);
        }
    };
    let (docs, batch) = match (&cli.jobs, &cli.command) {
        (Some(path), _) => match std::fs::read_to_string(path) {
            Ok(text) => (run_batch(&text, cli.seed), true),
            Err(e) => (
                vec![usage_error("batch", &format!("cannot read {}: {e}", path.display()))],
                false,
            ),
        },
        (None, Some(cmd)) => (vec![run(cmd, cli.seed)], false),
        (None, None) => {
            eprintln!("movingsyz: a subcommand or --jobs FILE is required (see --help)");
            return ExitCode::from(1);
        }
    };
    print!("{}", render(&docs, cli.format, batch));
    if cli.format == Format::Text {
        for d in docs.iter().filter(|d| d.status.exit_code() != 0) {
            if let Some(e) = d.get("error") {
                eprintln!("movingsyz {}: {}", d.command, e.text());
            }
        }
    }
    ExitCode::from(batch_exit_code(&docs) as u8)
}
