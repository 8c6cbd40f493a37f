// Produces the same JSON reports as the `splitocto` binary, in-process.

use clap::Parser;
use splitocto::cli::{execute, RunConfig};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let runs: [&[&str]; 3] = [
        &["splitocto", "table"],
        &["splitocto", "patho", "--A", "1", "--B", "t^2", "--x", "t^3", "--samples", "200", "--check-linear"],
        &["splitocto", "solve", "--field", "gf:2^3", "--kind", "field"],
    ];
    for args in runs {
        let cfg = RunConfig::try_parse_from(args)?;
        let out = execute(&cfg)?;
        println!("$ {}  (exit {})", args.join(" "), out.code);
        let text = out.json();
        for line in text.lines().take(12) {
            println!("  {line}");
        }
        if out.code != 0 {
            return Err(format!("{} failed", args[1]).into());
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("report example failed");
}
