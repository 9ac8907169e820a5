// RK4 integration of the eigen-equation from the closed-form initial data,
// compared with the closed-form `v_j` along the way.

use ewlab::oracle::shooting_order_all;
use ewlab::{GridSpec, ModelConfig};
use num_complex::Complex64;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = ModelConfig::from_parts(
        vec![2.0, 1.0],
        vec![Complex64::new(1.0, 1.0), Complex64::new(2.0, 0.0)],
    )?;
    let grid = GridSpec::new(0.1, 30.0, 1e-2)?;
    for rep in shooting_order_all(&cfg, &grid)? {
        println!(
            "j = {}: max |u - v_j| = {:.3e} at h = {}, ratio on halving {:.2}",
            rep.j + 1,
            rep.sup_residual,
            grid.step,
            rep.convergence_ratio
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
