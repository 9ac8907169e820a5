// Large-radius behaviour of `V`: the two-term expansion and fitted decay
// orders of its remainders.

use ewlab::cli::expand_table;
use ewlab::oracle::{potential_asymptotics_fit, AsymptoticWindow};
use ewlab::ModelConfig;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = ModelConfig::real(&[2.0, 1.0], &[1.0, 1.0])?;
    let table = expand_table(&cfg, &[50.0, 100.0, 200.0]).map_err(|f| f.message().to_string())?;
    print!("{table}");

    let fits = potential_asymptotics_fit(&cfg, &AsymptoticWindow::standard(&cfg))?;
    println!("slope of |V|:                 {:+.3}", fits.magnitude.slope);
    println!("slope after the leading term: {:+.3}", fits.leading.slope);
    println!("slope after both terms:       {:+.3}", fits.refined.slope);
    println!("max remainder * r^3:          {:.2}", fits.refined.scaled_max);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
