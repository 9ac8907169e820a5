// The full check suite as a library call.

use ewlab::cli::config::RunConfig;
use ewlab::cli::verify::{run_verification, VerifySettings};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let run = RunConfig::from_json(
        r#"{"mu": [3, 2, 1], "a": [[1, 2], [1, 0], [0, 1]],
            "grid": {"start": 0, "end": 50, "step": 0.01}, "seed": 42}"#,
    )?;
    let report = run_verification(&run, &VerifySettings::default())?;
    for (name, check) in &report.checks {
        println!("{} {name} = {:.4e}", if check.pass { "ok  " } else { "FAIL" }, check.value);
    }
    println!("all pass: {}", report.all_pass);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
