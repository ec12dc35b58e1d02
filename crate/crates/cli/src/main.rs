use std::process::ExitCode;

use solscat_cli::{run, CliError};

fn main() -> ExitCode {
    let argv: Vec<_> = std::env::args_os().collect();
    // with `-o -` the table owns stdout, so the summary goes to stderr
    let to_stdout = argv
        .windows(2)
        .any(|w| (w[0] == "-o" || w[0] == "--output") && w[1] == "-");
    let result = if to_stdout {
        run(argv, &mut std::io::stderr())
    } else {
        run(argv, &mut std::io::stdout())
    };
    match result {
        Ok(outcome) if outcome.passed => ExitCode::SUCCESS,
        Ok(_) => ExitCode::from(1),
        Err(CliError::Usage(e)) => {
            let _ = e.print();
            if e.use_stderr() {
                ExitCode::from(2)
            } else {
                // --help and --version
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("solscat: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
