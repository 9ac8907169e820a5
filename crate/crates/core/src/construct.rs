//! Eigenfunctions `v(r) = -(A + G(r))^{-1} s(r)`, the potential
//! `V = 2 (sum_j sin(mu_j r) v_j)'` and their large-radius expansions.
//!
//! Every quantity is evaluated from one LU factorization of `A + G(r)` per
//! radius. `V` is assembled analytically from `(v, v')`; nothing here
//! differentiates sampled data except the log-determinant cross-check.

use num_complex::Complex64;
use thiserror::Error;

use crate::kernel::{gram_matrix, h_matrix, trig_c, trig_s, ModelConfig};
use crate::linalg::{ComplexDense, LinalgError, LuFactors};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConstructError {
    #[error("radius {0} is negative or not finite")]
    InvalidRadius(f64),
    #[error("A + G(r) singular at r = {r}; coupling invariants were violated upstream")]
    TheoryViolation { r: f64, source: LinalgError },
    #[error("component index {j} out of range for n = {n}")]
    IndexOutOfRange { j: usize, n: usize },
    #[error("finite-difference step must be positive, got {0}")]
    InvalidStep(f64),
}

const C0: Complex64 = Complex64::new(0.0, 0.0);

fn cplx(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn check_radius(r: f64) -> Result<(), ConstructError> {
    if r.is_finite() && r >= 0.0 {
        Ok(())
    } else {
        Err(ConstructError::InvalidRadius(r))
    }
}

/// `A + G(r)` as a dense complex matrix. Accepts any finite `r`; the
/// construction is smooth across the origin.
pub fn coupled_gram(config: &ModelConfig, r: f64) -> ComplexDense {
    let n = config.n();
    let g = gram_matrix(config.freqs(), r);
    let mut m = ComplexDense::zeros(n);
    for i in 0..n {
        for j in 0..n {
            m.set(i, j, cplx(g.get(i, j)));
        }
        m.set(i, i, m.get(i, i) + config.a()[i]);
    }
    m
}

fn factor(config: &ModelConfig, r: f64) -> Result<LuFactors, ConstructError> {
    coupled_gram(config, r)
        .lu()
        .map_err(|source| ConstructError::TheoryViolation { r, source })
}

/// `(A + G(r))^{-1} b`.
pub fn resolvent_apply(
    config: &ModelConfig,
    r: f64,
    b: &[Complex64],
) -> Result<Vec<Complex64>, ConstructError> {
    check_radius(r)?;
    factor(config, r)?
        .solve(b)
        .map_err(|source| ConstructError::TheoryViolation { r, source })
}

/// `(A + G(r))^{-1}` assembled column by column.
pub fn resolvent_matrix(config: &ModelConfig, r: f64) -> Result<ComplexDense, ConstructError> {
    check_radius(r)?;
    let n = config.n();
    let lu = factor(config, r)?;
    let mut inv = ComplexDense::zeros(n);
    for j in 0..n {
        let mut e = vec![C0; n];
        e[j] = cplx(1.0);
        let col = lu
            .solve(&e)
            .map_err(|source| ConstructError::TheoryViolation { r, source })?;
        for (i, z) in col.into_iter().enumerate() {
            inv.set(i, j, z);
        }
    }
    Ok(inv)
}

/// `v(r)` and `v'(r)` at one radius.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenfunctionFrame {
    pub r: f64,
    pub v: Vec<Complex64>,
    pub v_prime: Vec<Complex64>,
}

impl EigenfunctionFrame {
    /// `V(r) = 2 sum_j [mu_j cos(mu_j r) v_j + sin(mu_j r) v_j']`.
    pub fn potential(&self, config: &ModelConfig) -> Complex64 {
        let s = trig_s(config.freqs(), self.r);
        let c = trig_c(config.freqs(), self.r);
        let sum: Complex64 = config
            .mu()
            .iter()
            .enumerate()
            .map(|(j, m)| self.v[j] * (m * c[j]) + self.v_prime[j] * s[j])
            .sum();
        sum * 2.0
    }
}

/// Solves for `v` and `v'` with a single factorization.
///
/// Uses `G' = s s^T`, which collapses the derivative of the inverse to
/// `v' = (s^T v) v - (A + G)^{-1} M c`.
pub fn frame(config: &ModelConfig, r: f64) -> Result<EigenfunctionFrame, ConstructError> {
    check_radius(r)?;
    let lu = factor(config, r)?;
    let s = trig_s(config.freqs(), r);
    let c = trig_c(config.freqs(), r);
    let wrap = |source| ConstructError::TheoryViolation { r, source };
    let rhs: Vec<Complex64> = s.iter().map(|&x| cplx(-x)).collect();
    let v = lu.solve(&rhs).map_err(wrap)?;
    let mc: Vec<Complex64> = config.mu().iter().zip(&c).map(|(m, c)| cplx(m * c)).collect();
    let w = lu.solve(&mc).map_err(wrap)?;
    let stv: Complex64 = s.iter().zip(&v).map(|(a, b)| b * a).sum();
    let v_prime = v.iter().zip(&w).map(|(vj, wj)| stv * vj - wj).collect();
    Ok(EigenfunctionFrame { r, v, v_prime })
}

pub fn eigenfunction_values(
    config: &ModelConfig,
    r: f64,
) -> Result<Vec<Complex64>, ConstructError> {
    check_radius(r)?;
    let s: Vec<Complex64> = trig_s(config.freqs(), r).into_iter().map(|x| cplx(-x)).collect();
    resolvent_apply(config, r, &s)
}

pub fn eigenfunction_derivative(
    config: &ModelConfig,
    r: f64,
) -> Result<Vec<Complex64>, ConstructError> {
    Ok(frame(config, r)?.v_prime)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PotentialValue {
    pub r: f64,
    pub value: Complex64,
}

pub fn potential_value(config: &ModelConfig, r: f64) -> Result<PotentialValue, ConstructError> {
    let f = frame(config, r)?;
    Ok(PotentialValue {
        r,
        value: f.potential(config),
    })
}

/// `W(r) = (sum_j sin^2(mu_j r))^2 + 2 sum_{i,j} h_ij(r) mu_i sin(mu_j r) cos(mu_i r)`.
/// Depends on the frequencies only.
pub fn w_function(config: &ModelConfig, r: f64) -> f64 {
    let mu = config.mu();
    let s = trig_s(config.freqs(), r);
    let c = trig_c(config.freqs(), r);
    let h = h_matrix(config.freqs(), r);
    let sq: f64 = s.iter().map(|x| x * x).sum();
    let mut cross = 0.0;
    for i in 0..mu.len() {
        for j in 0..mu.len() {
            cross += h.get(i, j) * mu[i] * s[j] * c[i];
        }
    }
    sq * sq + 2.0 * cross
}

/// The first two terms of the large-radius expansion of `V`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticTerms {
    /// `-(4/r) sum_j mu_j sin(2 mu_j r)`, independent of `A`.
    pub leading: f64,
    /// `(8/r^2) (sum_j a_j mu_j sin(2 mu_j r) + W(r))`.
    pub second: Complex64,
    pub w_value: f64,
}

impl AsymptoticTerms {
    pub fn total(&self) -> Complex64 {
        self.second + self.leading
    }
}

pub fn potential_asymptotics(
    config: &ModelConfig,
    r: f64,
) -> Result<AsymptoticTerms, ConstructError> {
    if !(r.is_finite() && r > 0.0) {
        return Err(ConstructError::InvalidRadius(r));
    }
    let mu = config.mu();
    let sin2: Vec<f64> = mu.iter().map(|m| (2.0 * m * r).sin()).collect();
    let leading = -4.0 / r * mu.iter().zip(&sin2).map(|(m, s)| m * s).sum::<f64>();
    let w_value = w_function(config, r);
    let coupled: Complex64 = config
        .a()
        .iter()
        .zip(mu)
        .zip(&sin2)
        .map(|((a, m), s)| a * (m * s))
        .sum();
    Ok(AsymptoticTerms {
        leading,
        second: (coupled + w_value) * (8.0 / (r * r)),
        w_value,
    })
}

/// Two-term large-radius expansion of `v_j` (0-based `j`):
/// `-(2/r) sin(mu_j r) + (4/r^2) [a_j sin(mu_j r) + sum_l h_jl(r) sin(mu_l r)]`.
pub fn eigenfunction_large_r(
    config: &ModelConfig,
    j: usize,
    r: f64,
) -> Result<Complex64, ConstructError> {
    let n = config.n();
    if j >= n {
        return Err(ConstructError::IndexOutOfRange { j, n });
    }
    Ok(eigenfunction_large_r_all(config, r)?[j])
}

/// Vector form of [`eigenfunction_large_r`]: `-(2/r) s + (4/r^2)(A + H) s`.
pub fn eigenfunction_large_r_all(
    config: &ModelConfig,
    r: f64,
) -> Result<Vec<Complex64>, ConstructError> {
    if !(r.is_finite() && r > 0.0) {
        return Err(ConstructError::InvalidRadius(r));
    }
    let n = config.n();
    let s = trig_s(config.freqs(), r);
    let h = h_matrix(config.freqs(), r);
    Ok((0..n)
        .map(|j| {
            let hs: f64 = (0..n).map(|l| h.get(j, l) * s[l]).sum();
            let bracket = config.a()[j] * s[j] + hs;
            cplx(-2.0 / r * s[j]) + bracket * (4.0 / (r * r))
        })
        .collect())
}

/// Two-term large-radius expansion of `v'`:
/// `-(2/r) M c + (4/r^2) [s (s^T s) + A M c + H M c]`.
pub fn eigenfunction_derivative_large_r(
    config: &ModelConfig,
    r: f64,
) -> Result<Vec<Complex64>, ConstructError> {
    if !(r.is_finite() && r > 0.0) {
        return Err(ConstructError::InvalidRadius(r));
    }
    let n = config.n();
    let mu = config.mu();
    let s = trig_s(config.freqs(), r);
    let c = trig_c(config.freqs(), r);
    let h = h_matrix(config.freqs(), r);
    let sts: f64 = s.iter().map(|x| x * x).sum();
    Ok((0..n)
        .map(|j| {
            let mc_j = mu[j] * c[j];
            let hmc: f64 = (0..n).map(|l| h.get(j, l) * mu[l] * c[l]).sum();
            let bracket = config.a()[j] * mc_j + s[j] * sts + hmc;
            cplx(-2.0 / r * mc_j) + bracket * (4.0 / (r * r))
        })
        .collect())
}

/// Two-term large-radius expansion of the inverse:
/// `(2/r) I - (4/r^2)(A + H(r))`.
pub fn resolvent_large_r(config: &ModelConfig, r: f64) -> Result<ComplexDense, ConstructError> {
    if !(r.is_finite() && r > 0.0) {
        return Err(ConstructError::InvalidRadius(r));
    }
    let n = config.n();
    let h = h_matrix(config.freqs(), r);
    let mut m = ComplexDense::zeros(n);
    let k = 4.0 / (r * r);
    for i in 0..n {
        for j in 0..n {
            let mut z = cplx(-k * h.get(i, j));
            if i == j {
                z += cplx(2.0 / r) - config.a()[i] * k;
            }
            m.set(i, j, z);
        }
    }
    Ok(m)
}

fn det(config: &ModelConfig, r: f64) -> Result<Complex64, ConstructError> {
    Ok(factor(config, r)?.determinant())
}

fn check_step(h: f64) -> Result<(), ConstructError> {
    if h.is_finite() && h > 0.0 {
        Ok(())
    } else {
        Err(ConstructError::InvalidStep(h))
    }
}

/// Central-difference estimate of `d/dr log det(A + G(r))`.
///
/// Works with determinant ratios, which stay near 1 for small steps, so the
/// principal logarithm never crosses a branch cut. Agrees with
/// `-sum_j sin(mu_j r) v_j(r)` to `O(h^2)`.
pub fn log_det_derivative(config: &ModelConfig, r: f64, h: f64) -> Result<Complex64, ConstructError> {
    check_radius(r)?;
    check_step(h)?;
    let ratio = det(config, r + h)? / det(config, r - h)?;
    Ok(ratio.ln() / (2.0 * h))
}

/// Three-point estimate of `(log det(A + G))''`; `-2` times it approximates `V`.
pub fn log_det_second_derivative(
    config: &ModelConfig,
    r: f64,
    h: f64,
) -> Result<Complex64, ConstructError> {
    check_radius(r)?;
    check_step(h)?;
    let d0 = det(config, r)?;
    let up = (det(config, r + h)? / d0).ln();
    let down = (d0 / det(config, r - h)?).ln();
    Ok((up - down) / (h * h))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one() -> ModelConfig {
        ModelConfig::real(&[1.0], &[1.0]).unwrap()
    }

    fn three() -> ModelConfig {
        ModelConfig::real(&[3.0, 2.0, 1.0], &[1.0, 1.0, 1.0]).unwrap()
    }

    fn complex2() -> ModelConfig {
        ModelConfig::from_parts(
            vec![2.0, 1.0],
            vec![Complex64::new(1.0, 1.0), Complex64::new(2.0, 0.0)],
        )
        .unwrap()
    }

    /// `1 + r/2 - sin(2r)/4`, the determinant for the single-frequency model.
    fn d1(r: f64) -> f64 {
        1.0 + r / 2.0 - (2.0 * r).sin() / 4.0
    }

    #[test]
    fn origin_values() {
        for cfg in [one(), three(), complex2()] {
            let f = frame(&cfg, 0.0).unwrap();
            assert!(f.v.iter().all(|z| z.norm() == 0.0));
            for (j, vp) in f.v_prime.iter().enumerate() {
                let expected = -cplx(cfg.mu()[j]) / cfg.a()[j];
                assert!((vp - expected).norm() < 1e-15);
            }
            assert_eq!(potential_value(&cfg, 0.0).unwrap().value.norm(), 0.0);
            assert_eq!(w_function(&cfg, 0.0), 0.0);
            let b = vec![Complex64::new(1.0, -2.0); cfg.n()];
            let x = resolvent_apply(&cfg, 0.0, &b).unwrap();
            for j in 0..cfg.n() {
                assert!((x[j] - b[j] / cfg.a()[j]).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn single_frequency_closed_forms() {
        let cfg = one();
        for r in [0.2, 1.0, 3.7, 25.0] {
            let x = resolvent_apply(&cfg, r, &[cplx(1.0)]).unwrap()[0];
            assert!((x.re - 1.0 / d1(r)).abs() < 1e-15 && x.im == 0.0);
            let v = eigenfunction_values(&cfg, r).unwrap()[0];
            assert!((v.re + r.sin() / d1(r)).abs() < 1e-15);
            // V = -2 (log D)'' with D' = sin^2 r, D'' = sin 2r
            let dp = r.sin().powi(2);
            let dpp = (2.0 * r).sin();
            let v_exact = -2.0 * (dpp / d1(r) - (dp / d1(r)).powi(2));
            let got = potential_value(&cfg, r).unwrap().value;
            assert!((got.re - v_exact).abs() < 1e-13, "r={r}: {got} vs {v_exact}");
            let w_exact = r.sin().powi(4) - r.sin().powi(2) * r.cos().powi(2);
            assert!((w_function(&cfg, r) - w_exact).abs() < 1e-14);
            let ld = log_det_derivative(&cfg, r, 1e-4).unwrap();
            assert!((ld.re - dp / d1(r)).abs() < 1e-8);
        }
    }

    #[test]
    fn derivative_matches_finite_difference() {
        let cfg = complex2();
        for r in [0.5, 2.0, 9.0] {
            let vp = eigenfunction_derivative(&cfg, r).unwrap();
            let errs: Vec<f64> = [1e-2, 5e-3]
                .iter()
                .map(|&h| {
                    let up = eigenfunction_values(&cfg, r + h).unwrap();
                    let dn = eigenfunction_values(&cfg, r - h).unwrap();
                    (0..2)
                        .map(|j| ((up[j] - dn[j]) / (2.0 * h) - vp[j]).norm())
                        .fold(0.0, f64::max)
                })
                .collect();
            let ratio = errs[0] / errs[1];
            assert!((3.0..5.0).contains(&ratio), "r={r} ratio={ratio}");
        }
    }

    #[test]
    fn w_is_coupling_independent() {
        let a = ModelConfig::real(&[2.0, 1.0], &[1.0, 1.0]).unwrap();
        let b = ModelConfig::from_parts(vec![2.0, 1.0], vec![Complex64::new(0.0, 1.0); 2]).unwrap();
        for r in [0.3, 4.0, 77.0] {
            assert_eq!(w_function(&a, r), w_function(&b, r));
        }
    }

    #[test]
    fn asymptotic_terms_structure() {
        let cfg = one();
        let t = potential_asymptotics(&cfg, std::f64::consts::FRAC_PI_2).unwrap();
        assert!(t.leading.abs() < 1e-14);
        let cfg2 = complex2();
        let doubled = cfg2
            .with_couplings(
                crate::kernel::Couplings::new(cfg2.a().iter().map(|z| z * 2.0).collect()).unwrap(),
            )
            .unwrap();
        for r in [50.0, 123.4] {
            let t1 = potential_asymptotics(&cfg2, r).unwrap();
            let t2 = potential_asymptotics(&doubled, r).unwrap();
            assert_eq!(t1.leading, t2.leading);
            let k = 8.0 / (r * r);
            let lin1 = t1.second - t1.w_value * k;
            let lin2 = t2.second - t2.w_value * k;
            assert!((lin2 - lin1 * 2.0).norm() < 1e-15);
        }
        assert!(potential_asymptotics(&cfg, 0.0).is_err());
    }

    #[test]
    fn large_r_expansion_at_sine_zeros() {
        // sin(mu_2 r) = 0 at r = 40 pi, leaving only the h-sum
        let cfg = ModelConfig::real(&[2f64.sqrt(), 1.0], &[1.0, 1.0]).unwrap();
        let r = 40.0 * std::f64::consts::PI;
        let s = trig_s(cfg.freqs(), r);
        let h = h_matrix(cfg.freqs(), r);
        let e = eigenfunction_large_r(&cfg, 1, r).unwrap();
        let hsum: f64 = (0..2).map(|l| h.get(1, l) * s[l]).sum();
        assert!(hsum.abs() > 1e-3);
        assert!((e.re - 4.0 / (r * r) * hsum).abs() < 1e-16);
        assert!(eigenfunction_large_r(&cfg, 2, r).is_err());
    }

    #[test]
    fn negative_radius_rejected() {
        assert!(matches!(
            frame(&one(), -1.0),
            Err(ConstructError::InvalidRadius(_))
        ));
        assert!(log_det_derivative(&one(), 1.0, 0.0).is_err());
    }

    #[test]
    fn log_det_at_origin() {
        // log det is odd to leading order: sum_j mu_j^2 r^3 / 3, so the
        // central difference at 0 is sum_j mu_j^2 h^2 / 3 = 14 h^2 / 3
        let h = 1e-3;
        let v = log_det_derivative(&three(), 0.0, h).unwrap();
        assert!((v.re - 14.0 * h * h / 3.0).abs() < 1e-9 && v.im.abs() < 1e-15);
    }
}
