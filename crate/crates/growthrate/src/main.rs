use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use growthrate::cli::{execute, Cli};
use growthrate::Error;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // Help and version go to stdout with status 0, errors with 2.
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match execute(cli) {
        Ok(out) => {
            let written = match &out.output {
                Some(path) => std::fs::write(path, &out.text).map_err(|source| Error::Io {
                    path: path.clone(),
                    source,
                }),
                None => std::io::stdout()
                    .write_all(out.text.as_bytes())
                    .map_err(|source| Error::Io {
                        path: "<stdout>".into(),
                        source,
                    }),
            };
            match written {
                Ok(()) => ExitCode::from(out.exit_code as u8),
                Err(e) => fail(e),
            }
        }
        Err(e) => fail(e),
    }
}

fn fail(e: Error) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(e.exit_code() as u8)
}
