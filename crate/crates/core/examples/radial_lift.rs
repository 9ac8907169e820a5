// `u_j = v_j / r` solves the radial problem in three dimensions; in other
// dimensions the residual does not vanish under refinement.

use ewlab::radial3d::{dimension_obstruction, lift_to_3d, radial_laplacian_residual};
use ewlab::{GridSpec, ModelConfig};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = ModelConfig::real(&[3.0, 2.0, 1.0], &[1.0, 1.0, 1.0])?;
    let lift = lift_to_3d(&cfg, 0, &GridSpec::new(0.0, 1.0, 0.25)?)?;
    for (r, u) in lift.radii.iter().zip(&lift.values) {
        println!("u_1({r:.2}) = {:+.6}", u.re);
    }

    let grid = GridSpec::new(0.5, 30.0, 1e-2)?;
    for d in 2..=5u32 {
        let coarse = radial_laplacian_residual(&cfg, 0, &grid, d)?;
        let fine = radial_laplacian_residual(&cfg, 0, &grid.refined(), d)?;
        println!(
            "d = {d}: obstruction {:+.2}, residual {coarse:.3e} -> {fine:.3e}",
            dimension_obstruction(d)
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
