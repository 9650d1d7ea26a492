use std::io::Write;
use std::process::ExitCode;

use signlab_cli::{run_from_args, EXIT_INPUT};

fn main() -> ExitCode {
    let outcome = match run_from_args(std::env::args_os()) {
        Ok(o) => o,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT as u8 } else { 0 });
        }
    };
    for note in &outcome.notes {
        eprintln!("{note}");
    }
    if !outcome.csv.is_empty() {
        let written = match &outcome.out {
            Some(path) => std::fs::write(path, &outcome.csv),
            None => std::io::stdout().lock().write_all(&outcome.csv),
        };
        if let Err(e) = written {
            eprintln!("error: cannot write output: {e}");
            return ExitCode::from(EXIT_INPUT as u8);
        }
    }
    ExitCode::from(outcome.exit as u8)
}
