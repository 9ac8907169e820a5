// Inverse iteration on the truncated Dirichlet Hamiltonian at each
// `mu_j^2`, for the given couplings and a few random ones.

use ewlab::spectral::{probe_embedded, sample_couplings, ProbeSettings};
use ewlab::{Couplings, GridSpec, ModelConfig};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = ModelConfig::real(&[2.0, 1.0], &[1.0, 1.0])?;
    let grid = GridSpec::new(0.0, 200.0, 0.01)?;
    for a in std::iter::once(cfg.a().to_vec()).chain(sample_couplings(2, 3, 7)) {
        let model = cfg.with_couplings(Couplings::new(a.clone())?)?;
        print!("a = [{:.2}, {:.2}]:", a[0], a[1]);
        for p in probe_embedded(&model, &grid, ProbeSettings::default())? {
            print!(
                "  mu^2 = {}: {:.6} (corr {:.4}, {} its)",
                p.shift, p.eigval_estimate.re, p.correlation, p.iterations
            );
        }
        println!();
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
