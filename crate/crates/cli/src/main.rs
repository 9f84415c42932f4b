use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use toric_cli::{run, Cli, CliError};

fn emit(cli: &Cli) -> Result<i32, CliError> {
    if let Some(t) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| CliError::Usage(format!("--threads: {e}")))?;
    }
    let out = run(cli)?;
    if let Some(path) = &cli.output {
        std::fs::write(path, &out.text).map_err(|err| CliError::Io { path: path.display().to_string(), err })?;
    }
    let mut stdout = std::io::stdout().lock();
    let res = if cli.json {
        writeln!(stdout, "{}", serde_json::to_string_pretty(&out.json).expect("json values serialize"))
    } else {
        if cli.output.is_none() {
            stdout.write_all(out.text.as_bytes()).and_then(|_| stdout.flush()).map_err(|err| CliError::Io { path: "<stdout>".into(), err })?;
        }
        for line in &out.summary {
            eprintln!("{line}");
        }
        Ok(())
    };
    res.map_err(|err| CliError::Io { path: "<stdout>".into(), err })?;
    Ok(out.exit_code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match emit(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
