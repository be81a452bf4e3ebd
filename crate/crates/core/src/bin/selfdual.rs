use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use selfdual::script::{parse_script, run, RunFlags};

/// Run a script of ring, module and check statements.
#[derive(Parser)]
#[command(name = "selfdual", version)]
struct Args {
    /// Script file; reads stdin when absent or `-`.
    file: Option<PathBuf>,
    /// Print one JSON document instead of text.
    #[arg(long)]
    json: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Default resolution length cap.
    #[arg(long, default_value_t = 10)]
    cap: usize,
    /// Random trials per isomorphism test.
    #[arg(long, default_value_t = 32)]
    trials: usize,
    /// Default top degree for `hilbert`.
    #[arg(long, default_value_t = 8)]
    upto: i32,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let text = match &args.file {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p),
        _ => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map(|_| s)
        }
    };
    let text = match text {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let flags = RunFlags {
        json: args.json,
        seed: args.seed,
        cap: args.cap,
        trials: args.trials,
        upto: args.upto,
    };
    let script = match parse_script(&text) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let out = run(&script, &flags);
    let body = if flags.json {
        serde_json::to_string_pretty(&out.to_json(&flags)).unwrap() + "\n"
    } else {
        out.render_text()
    };
    // A closed pipe (e.g. `| head`) is not an error worth a panic.
    let _ = std::io::stdout().lock().write_all(body.as_bytes());
    if let Some(e) = &out.error {
        eprintln!("error: {e}");
    }
    ExitCode::from(out.exit_code as u8)
}
