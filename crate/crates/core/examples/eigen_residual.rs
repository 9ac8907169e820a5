// Finite-difference residual of `-v_j'' + V v_j = mu_j^2 v_j` and its
// second-order convergence.

use ewlab::oracle::residual_eigen_equation_all;
use ewlab::{GridSpec, ModelConfig};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = ModelConfig::real(&[3.0, 2.0, 1.0], &[1.0, 1.0, 1.0])?;
    let grid = GridSpec::new(0.0, 20.0, 1e-3)?;
    for rep in residual_eigen_equation_all(&cfg, &grid)? {
        println!(
            "j = {}: sup residual {:.3e} (h), {:.3e} (h/2), ratio {:.3}",
            rep.j + 1,
            rep.sup_residual,
            rep.sup_residual_refined,
            rep.convergence_ratio
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
