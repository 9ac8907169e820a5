// Driving the command-line front end in-process: write a config, build
// the CSV, and expand at a few radii.

use ewlab::cli;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let dir = tempfile::tempdir()?;
    let config = dir.path().join("model.json");
    let csv = dir.path().join("model.csv");
    std::fs::write(
        &config,
        r#"{"mu": [1], "a": [[1, 0]], "grid": {"start": 0, "end": 10, "step": 0.01}, "seed": 1}"#,
    )?;
    let config = config.to_str().ok_or("non-UTF-8 temp path")?;

    let code = cli::run(["ewlab", "build", "--config", config, "--out", csv.to_str().unwrap()]);
    let text = std::fs::read_to_string(&csv)?;
    println!("build exited {code}; {} data rows", text.lines().count() - 1);
    for line in text.lines().take(3) {
        println!("  {line}");
    }

    let code = cli::run(["ewlab", "expand", "--config", config, "50", "100", "200"]);
    println!("expand exited {code}");
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
