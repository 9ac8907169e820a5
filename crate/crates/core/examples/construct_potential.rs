// Two embedded eigenvalues (4 and 1) with real and complex couplings.

use ewlab::construct::{frame, w_function};
use ewlab::ModelConfig;
use num_complex::Complex64;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let real = ModelConfig::real(&[2.0, 1.0], &[1.0, 1.0])?;
    let complex = ModelConfig::from_parts(
        vec![2.0, 1.0],
        vec![Complex64::new(1.0, 1.0), Complex64::new(2.0, 0.0)],
    )?;

    for (name, cfg) in [("real", &real), ("complex", &complex)] {
        println!("{name}: mu = {:?}", cfg.mu());
        println!("{:>6} {:>24} {:>24} {:>10}", "r", "V", "v_1", "W");
        for r in [0.0, 0.5, 1.0, 2.0, 5.0, 10.0, 50.0] {
            let f = frame(cfg, r)?;
            let v = f.potential(cfg);
            println!(
                "{r:>6.1} {:>24} {:>24} {:>10.4}",
                format!("{:.5}{:+.5}i", v.re, v.im),
                format!("{:.5}{:+.5}i", f.v[0].re, f.v[0].im),
                w_function(cfg, r),
            );
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
