//! Dirichlet Hamiltonian on a truncated interval `[0, R]` and shifted
//! inverse iteration at the prescribed energies `mu_j^2`.
//!
//! The second-order stencil gives a complex-symmetric tridiagonal matrix
//! (`sub == sup`), so eigenvalue estimates use the bilinear Rayleigh
//! quotient `x^T H x / x^T x` rather than the Hermitian one. A truncated
//! probe cannot see the essential spectrum; it only locates the discrete
//! eigenvalue closest to each shift.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::construct::{self, ConstructError};
use crate::grid::GridSpec;
use crate::kernel::ModelConfig;
use crate::linalg::{ComplexTridiagonal, LinalgError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectralError {
    #[error("Dirichlet grid must start at 0, got {0}")]
    GridNotAtOrigin(f64),
    #[error("grid needs at least one interior node")]
    NoInteriorNodes,
    #[error("vector is quasi-isotropic (x^T x ~ 0); perturb it")]
    IsotropicVector,
    #[error("vector is zero")]
    ZeroVector,
    #[error("inverse iteration did not converge in {iterations} steps (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },
    #[error("start vector has length {got}, operator has {expected}")]
    StartLength { expected: usize, got: usize },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Construct(#[from] ConstructError),
}

const C0: Complex64 = Complex64::new(0.0, 0.0);

/// `-d^2/dr^2 + V` on the interior nodes of a grid starting at 0.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteHamiltonian {
    pub grid: GridSpec,
    pub operator: ComplexTridiagonal,
}

impl DiscreteHamiltonian {
    /// Second-order stencil with `V` sampled at interior nodes by `potential`.
    pub fn from_potential<F>(grid: &GridSpec, potential: F) -> Result<Self, SpectralError>
    where
        F: Fn(f64) -> Result<Complex64, SpectralError>,
    {
        if grid.start != 0.0 {
            return Err(SpectralError::GridNotAtOrigin(grid.start));
        }
        let k = grid.intervals();
        if k < 2 {
            return Err(SpectralError::NoInteriorNodes);
        }
        let h2 = grid.step * grid.step;
        let off = Complex64::new(-1.0 / h2, 0.0);
        let diag = (1..k)
            .map(|i| Ok(potential(grid.node(i))? + 2.0 / h2))
            .collect::<Result<Vec<_>, SpectralError>>()?;
        let operator = ComplexTridiagonal::new(vec![off; k - 2], diag, vec![off; k - 2])?;
        Ok(Self {
            grid: *grid,
            operator,
        })
    }

    /// Free Dirichlet Laplacian (`V = 0`).
    pub fn free(grid: &GridSpec) -> Result<Self, SpectralError> {
        Self::from_potential(grid, |_| Ok(C0))
    }

    /// Interior radius for unknown `i`.
    pub fn radius(&self, i: usize) -> f64 {
        self.grid.node(i + 1)
    }

    pub fn dim(&self) -> usize {
        self.operator.len()
    }

    /// Exact eigenvalues `(2/h^2)(1 - cos(k pi h / R))` of the free stencil.
    pub fn free_eigenvalue(grid: &GridSpec, k: usize) -> f64 {
        let h = grid.step;
        let big_r = grid.intervals() as f64 * h;
        2.0 / (h * h) * (1.0 - (k as f64 * std::f64::consts::PI * h / big_r).cos())
    }
}

pub fn build_hamiltonian(
    config: &ModelConfig,
    grid: &GridSpec,
) -> Result<DiscreteHamiltonian, SpectralError> {
    DiscreteHamiltonian::from_potential(grid, |r| Ok(construct::potential_value(config, r)?.value))
}

fn bilinear(x: &[Complex64], y: &[Complex64]) -> Complex64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

fn norm(x: &[Complex64]) -> f64 {
    x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// `x^T H x / x^T x` without conjugation.
pub fn rayleigh_quotient(
    hd: &DiscreteHamiltonian,
    x: &[Complex64],
) -> Result<Complex64, SpectralError> {
    let nx = norm(x);
    if nx == 0.0 {
        return Err(SpectralError::ZeroVector);
    }
    let xx = bilinear(x, x);
    if xx.norm() <= 1e-12 * nx * nx {
        return Err(SpectralError::IsotropicVector);
    }
    Ok(bilinear(x, &hd.operator.matvec(x)) / xx)
}

fn residual_norm(hd: &DiscreteHamiltonian, x: &[Complex64], lambda: Complex64) -> f64 {
    let hx = hd.operator.matvec(x);
    let r: f64 = hx
        .iter()
        .zip(x)
        .map(|(a, b)| (a - b * lambda).norm_sqr())
        .sum::<f64>()
        .sqrt();
    r / norm(x)
}

/// Where the iteration started.
#[derive(Debug, Clone, PartialEq)]
pub enum StartVector {
    /// A caller-supplied vector, e.g. the sampled closed-form eigenfunction.
    Given(Vec<Complex64>),
    /// Uniform random entries from a seeded generator.
    Seeded(u64),
}

impl StartVector {
    pub fn label(&self) -> String {
        match self {
            StartVector::Given(_) => "given".to_string(),
            StartVector::Seeded(seed) => format!("seeded:{seed}"),
        }
    }

    fn materialize(&self, dim: usize) -> Result<Vec<Complex64>, SpectralError> {
        match self {
            StartVector::Given(v) if v.len() != dim => Err(SpectralError::StartLength {
                expected: dim,
                got: v.len(),
            }),
            StartVector::Given(v) => Ok(v.clone()),
            StartVector::Seeded(seed) => {
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                Ok((0..dim)
                    .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                    .collect())
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct InverseIteration {
    pub shift: Complex64,
    pub eigval: Complex64,
    pub vector: Vec<Complex64>,
    pub residual: f64,
    pub iterations: usize,
}

/// Power iteration on `(H - shift)^{-1}` until
/// `||H x - lambda x|| / ||x|| <= tol`, `lambda` the bilinear quotient.
///
/// A shift that lands exactly on a discrete eigenvalue is nudged to
/// `shift * (1 + 1e-10)`.
pub fn inverse_iteration(
    hd: &DiscreteHamiltonian,
    shift: Complex64,
    tol: f64,
    max_iter: usize,
    start: &StartVector,
) -> Result<InverseIteration, SpectralError> {
    let (lu, shift) = match hd.operator.shifted(shift).factor() {
        Ok(lu) => (lu, shift),
        Err(LinalgError::SingularMatrix { .. }) => {
            let nudged = shift * (1.0 + 1e-10);
            (hd.operator.shifted(nudged).factor()?, nudged)
        }
        Err(e) => return Err(e.into()),
    };
    let mut x = start.materialize(hd.dim())?;
    let mut residual = f64::INFINITY;
    for it in 1..=max_iter {
        let y = lu.solve(&x)?;
        let ny = norm(&y);
        if ny == 0.0 {
            return Err(SpectralError::ZeroVector);
        }
        x = y.into_iter().map(|z| z / ny).collect();
        let lambda = rayleigh_quotient(hd, &x)?;
        residual = residual_norm(hd, &x, lambda);
        if residual <= tol {
            return Ok(InverseIteration {
                shift,
                eigval: lambda,
                vector: x,
                residual,
                iterations: it,
            });
        }
    }
    Err(SpectralError::NoConvergence {
        iterations: max_iter,
        residual,
    })
}

/// `|<x, y>| / (||x|| ||y||)`: the cosine after the optimal phase
/// `x -> e^{i theta} x` has been applied.
pub fn phase_aligned_correlation(x: &[Complex64], y: &[Complex64]) -> f64 {
    let inner: Complex64 = x.iter().zip(y).map(|(a, b)| a.conj() * b).sum();
    inner.norm() / (norm(x) * norm(y))
}

/// Multiplies `x` by the unit phase maximizing `Re <x, y>`.
pub fn align_phase(x: &[Complex64], y: &[Complex64]) -> Vec<Complex64> {
    let inner: Complex64 = x.iter().zip(y).map(|(a, b)| a.conj() * b).sum();
    let phase = if inner.norm() == 0.0 {
        Complex64::new(1.0, 0.0)
    } else {
        inner / inner.norm()
    };
    x.iter().map(|z| z * phase).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProbeResult {
    pub j: usize,
    pub shift: f64,
    pub eigval_estimate: Complex64,
    pub residual: f64,
    /// `|v_j(R)|` at the truncation radius.
    pub boundary_leak: f64,
    /// Phase-aligned correlation between the converged vector and sampled `v_j`.
    pub correlation: f64,
    pub iterations: usize,
    pub start: String,
}

impl ProbeResult {
    pub fn error(&self) -> f64 {
        (self.eigval_estimate - self.shift).norm()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbeSettings {
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for ProbeSettings {
    fn default() -> Self {
        Self {
            tol: 1e-8,
            max_iter: 200,
        }
    }
}

/// `v_j` sampled at the interior nodes.
pub fn sampled_eigenfunctions(
    config: &ModelConfig,
    hd: &DiscreteHamiltonian,
) -> Result<Vec<Vec<Complex64>>, SpectralError> {
    let mut cols = vec![Vec::with_capacity(hd.dim()); config.n()];
    for i in 0..hd.dim() {
        let v = construct::eigenfunction_values(config, hd.radius(i))?;
        for (col, z) in cols.iter_mut().zip(v) {
            col.push(z);
        }
    }
    Ok(cols)
}

/// Inverse iteration at every `mu_j^2`, started from the sampled `v_j`.
pub fn probe_embedded(
    config: &ModelConfig,
    grid: &GridSpec,
    settings: ProbeSettings,
) -> Result<Vec<ProbeResult>, SpectralError> {
    let hd = build_hamiltonian(config, grid)?;
    let samples = sampled_eigenfunctions(config, &hd)?;
    let edge = construct::eigenfunction_values(config, grid.node(grid.intervals()))?;
    let mut out = Vec::with_capacity(config.n());
    for (j, sample) in samples.into_iter().enumerate() {
        let mu2 = config.mu()[j] * config.mu()[j];
        let start = StartVector::Given(sample.clone());
        let it = inverse_iteration(
            &hd,
            Complex64::new(mu2, 0.0),
            settings.tol,
            settings.max_iter,
            &start,
        )?;
        out.push(ProbeResult {
            j,
            shift: mu2,
            eigval_estimate: it.eigval,
            residual: it.residual,
            boundary_leak: edge[j].norm(),
            correlation: phase_aligned_correlation(&it.vector, &sample),
            iterations: it.iterations,
            start: "sampled".to_string(),
        });
    }
    Ok(out)
}

/// `||H v_j - mu_j^2 v_j|| / ||v_j||` for the sampled closed-form `v_j`.
pub fn sampled_residual(
    config: &ModelConfig,
    grid: &GridSpec,
    j: usize,
) -> Result<f64, SpectralError> {
    let hd = build_hamiltonian(config, grid)?;
    let samples = sampled_eigenfunctions(config, &hd)?;
    let mu2 = config.mu()[j] * config.mu()[j];
    Ok(residual_norm(&hd, &samples[j], Complex64::new(mu2, 0.0)))
}

/// `count` admissible coupling vectors from a seeded generator:
/// `Re a in [0.25, 4]`, `Im a in [-2, 2]`.
pub fn sample_couplings(n: usize, count: usize, seed: u64) -> Vec<Vec<Complex64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            (0..n)
                .map(|_| Complex64::new(rng.gen_range(0.25..4.0), rng.gen_range(-2.0..2.0)))
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_laplacian_ground_state() {
        let grid = GridSpec::new(0.0, 10.0, 0.05).unwrap();
        let hd = DiscreteHamiltonian::free(&grid).unwrap();
        assert_eq!(hd.dim(), 199);
        assert_eq!(hd.operator.sub, hd.operator.sup);
        let exact = DiscreteHamiltonian::free_eigenvalue(&grid, 1);
        let it = inverse_iteration(
            &hd,
            Complex64::new(exact * 1.01, 0.0),
            1e-9,
            100,
            &StartVector::Seeded(1),
        )
        .unwrap();
        assert!((it.eigval.re - exact).abs() < 1e-10);
        // eigenvector is sin(pi r / R)
        let sine: Vec<Complex64> = (0..hd.dim())
            .map(|i| Complex64::new((std::f64::consts::PI * hd.radius(i) / 10.0).sin(), 0.0))
            .collect();
        assert!(phase_aligned_correlation(&it.vector, &sine) > 1.0 - 1e-10);
    }

    #[test]
    fn exact_shift_is_nudged() {
        let grid = GridSpec::new(0.0, 4.0, 1.0).unwrap();
        let hd = DiscreteHamiltonian::free(&grid).unwrap();
        // 3x3 stencil [2 -1 0; -1 2 -1; 0 -1 2] has eigenvalue exactly 2
        let it = inverse_iteration(
            &hd,
            Complex64::new(2.0, 0.0),
            1e-10,
            50,
            &StartVector::Seeded(3),
        )
        .unwrap();
        assert!((it.eigval.re - 2.0).abs() < 1e-9);
        assert!(it.shift.re != 2.0);
    }

    #[test]
    fn rayleigh_quotient_properties() {
        let grid = GridSpec::new(0.0, 4.0, 1.0).unwrap();
        let hd = DiscreteHamiltonian::free(&grid).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let x: Vec<Complex64> = [s, 1.0, s].iter().map(|&v| Complex64::new(v, 0.0)).collect();
        // eigenvector of the 3x3 stencil for 2 - sqrt 2
        let rq = rayleigh_quotient(&hd, &x).unwrap();
        assert!((rq.re - (2.0 - 2f64.sqrt())).abs() < 1e-14);
        let scaled: Vec<Complex64> = x.iter().map(|z| z * Complex64::new(-0.3, 2.0)).collect();
        assert!((rayleigh_quotient(&hd, &scaled).unwrap() - rq).norm() < 1e-14);
        let iso = vec![
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 1.0),
            Complex64::new(0.0, 0.0),
        ];
        assert!(matches!(
            rayleigh_quotient(&hd, &iso),
            Err(SpectralError::IsotropicVector)
        ));
        assert!(matches!(
            rayleigh_quotient(&hd, &[C0; 3]),
            Err(SpectralError::ZeroVector)
        ));
    }

    #[test]
    fn rejects_grids_away_from_origin() {
        let grid = GridSpec::new(0.5, 4.0, 0.1).unwrap();
        assert!(matches!(
            DiscreteHamiltonian::free(&grid),
            Err(SpectralError::GridNotAtOrigin(_))
        ));
    }

    #[test]
    fn diagonal_matches_potential() {
        let cfg = ModelConfig::from_parts(
            vec![2.0, 1.0],
            vec![Complex64::new(1.0, 1.0), Complex64::new(2.0, 0.0)],
        )
        .unwrap();
        let grid = GridSpec::new(0.0, 5.0, 0.05).unwrap();
        let hd = build_hamiltonian(&cfg, &grid).unwrap();
        for i in 0..hd.dim() {
            let v = construct::potential_value(&cfg, hd.radius(i)).unwrap().value;
            assert_eq!(hd.operator.diag[i], v + 2.0 / (0.05 * 0.05));
        }
        assert_eq!(hd.operator.sub, hd.operator.sup);
    }

    #[test]
    fn no_convergence_is_reported() {
        let grid = GridSpec::new(0.0, 10.0, 0.05).unwrap();
        let hd = DiscreteHamiltonian::free(&grid).unwrap();
        // shift halfway between two eigenvalues converges slowly
        let mid = 0.5
            * (DiscreteHamiltonian::free_eigenvalue(&grid, 3)
                + DiscreteHamiltonian::free_eigenvalue(&grid, 4));
        let res = inverse_iteration(&hd, Complex64::new(mid, 0.0), 1e-12, 2, &StartVector::Seeded(9));
        assert!(matches!(res, Err(SpectralError::NoConvergence { .. })));
    }
}
