//! Run a script through the library, as the `selfdual` binary does.
//!
//! `cargo run --example run_script -- scripts/remark.sd --json`

use selfdual::script::{parse_script, run, RunFlags};

const DEFAULT: &str = "\
ring S = F(101)[x, y, z];
module K = residue;
betti K;
check selfdual K;
hilbert K upto=3;
";

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let json = args.iter().any(|a| a == "--json");
    let text = match args.iter().find(|a| !a.starts_with("--")) {
        Some(path) => std::fs::read_to_string(path).expect("readable script"),
        None => DEFAULT.to_string(),
    };
    let flags = RunFlags {
        json,
        ..RunFlags::default()
    };
    let script = match parse_script(&text) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("{e}");
            std::process::exit(2);
        }
    };
    let out = run(&script, &flags);
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(&out.to_json(&flags)).unwrap()
        );
    } else {
        print!("{}", out.render_text());
    }
    if let Some(e) = out.error {
        eprintln!("{e}");
    }
    std::process::exit(out.exit_code);
}
