// Closed-form Gram entries against adaptive quadrature, and positivity of
// `xi^* G(r) xi`.

use ewlab::kernel::{gram_entry, gram_positivity_check};
use ewlab::oracle::quadrature_gram;
use ewlab::Frequencies;
use num_complex::Complex64;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let mu = [3.0, 2.0, 1.0];
    let mut worst = 0.0f64;
    for (i, j, r) in [(0, 0, 0.3), (0, 1, 2.5), (1, 2, 7.0), (2, 2, 19.0), (0, 2, 40.0)] {
        let closed = gram_entry(mu[i], mu[j], r);
        let quad = quadrature_gram(mu[i], mu[j], r, 1e-12)?;
        worst = worst.max((closed - quad).abs());
        println!("g_{}{}({r:>4}) = {closed:+.15} (quadrature {quad:+.15})", i + 1, j + 1);
    }
    println!("max |closed - quadrature| = {worst:.2e}");

    let freqs = Frequencies::new(mu.to_vec())?;
    let xi = [
        Complex64::new(1.0, -0.5),
        Complex64::new(-2.0, 0.0),
        Complex64::new(0.3, 1.0),
    ];
    for r in [0.1, 1.0, 10.0] {
        println!("xi^* G({r}) xi = {:.6e}", gram_positivity_check(&freqs, r, &xi)?);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
