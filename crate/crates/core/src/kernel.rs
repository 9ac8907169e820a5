//! Trigonometric vectors and the Gram matrix of the sine family.
//!
//! For frequencies `mu_1 > ... > mu_n > 0` the Gram matrix is
//! `g_ij(r) = int_0^r sin(mu_i t) sin(mu_j t) dt`. Every entry is evaluated
//! from its closed form; the integral definition lives only in
//! [`crate::oracle::quadrature_gram`].

use num_complex::Complex64;
use thiserror::Error;

/// Invalid model input. Indices in messages are 1-based.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("mu is empty (need n >= 1)")]
    Empty,
    #[error("mu_{index} is not finite")]
    NonFiniteFrequency { index: usize },
    #[error("mu_{index} <= 0")]
    NonPositiveFrequency { index: usize },
    #[error("mu_{index} <= mu_{next} (frequencies must be strictly decreasing)", next = .index + 1)]
    NotDecreasing { index: usize },
    #[error("a_{index} is not finite")]
    NonFiniteCoupling { index: usize },
    #[error("a_{index} = 0")]
    ZeroCoupling { index: usize },
    #[error("Re(a_{index}) < 0")]
    NegativeRealPart { index: usize },
    #[error("length mismatch: {mu} frequencies but {a} couplings")]
    LengthMismatch { mu: usize, a: usize },
}

/// Strictly decreasing positive frequencies; the eigenvalues are `mu_j^2`.
#[derive(Debug, Clone, PartialEq)]
pub struct Frequencies(Vec<f64>);

impl Frequencies {
    pub fn new(mu: Vec<f64>) -> Result<Self, ModelError> {
        if mu.is_empty() {
            return Err(ModelError::Empty);
        }
        for (k, &m) in mu.iter().enumerate() {
            if !m.is_finite() {
                return Err(ModelError::NonFiniteFrequency { index: k + 1 });
            }
            if m <= 0.0 {
                return Err(ModelError::NonPositiveFrequency { index: k + 1 });
            }
        }
        if let Some(k) = mu.windows(2).position(|w| w[0] <= w[1]) {
            return Err(ModelError::NotDecreasing { index: k + 1 });
        }
        Ok(Self(mu))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }
}

/// Diagonal of the coupling matrix `A`: every entry nonzero with `Re >= 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct Couplings(Vec<Complex64>);

impl Couplings {
    pub fn new(a: Vec<Complex64>) -> Result<Self, ModelError> {
        for (k, z) in a.iter().enumerate() {
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(ModelError::NonFiniteCoupling { index: k + 1 });
            }
            if z.re < 0.0 {
                return Err(ModelError::NegativeRealPart { index: k + 1 });
            }
            if z.re == 0.0 && z.im == 0.0 {
                return Err(ModelError::ZeroCoupling { index: k + 1 });
            }
        }
        Ok(Self(a))
    }

    /// All couplings equal to one (the identity matrix).
    pub fn identity(n: usize) -> Self {
        Self(vec![Complex64::new(1.0, 0.0); n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.0
    }

    /// True when every coupling is real (and therefore positive).
    pub fn is_real(&self) -> bool {
        self.0.iter().all(|z| z.im == 0.0)
    }
}

/// The pair `(mu, A)` that determines the potential.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelConfig {
    freqs: Frequencies,
    couplings: Couplings,
}

impl ModelConfig {
    pub fn new(freqs: Frequencies, couplings: Couplings) -> Result<Self, ModelError> {
        if freqs.len() != couplings.len() {
            return Err(ModelError::LengthMismatch {
                mu: freqs.len(),
                a: couplings.len(),
            });
        }
        Ok(Self { freqs, couplings })
    }

    /// Validates raw frequencies and couplings in one step.
    pub fn from_parts(mu: Vec<f64>, a: Vec<Complex64>) -> Result<Self, ModelError> {
        let freqs = Frequencies::new(mu)?;
        let couplings = Couplings::new(a)?;
        Self::new(freqs, couplings)
    }

    /// Real couplings, convenient for tests and examples.
    pub fn real(mu: &[f64], a: &[f64]) -> Result<Self, ModelError> {
        Self::from_parts(
            mu.to_vec(),
            a.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
        )
    }

    pub fn n(&self) -> usize {
        self.freqs.len()
    }

    pub fn freqs(&self) -> &Frequencies {
        &self.freqs
    }

    pub fn mu(&self) -> &[f64] {
        self.freqs.as_slice()
    }

    pub fn couplings(&self) -> &Couplings {
        &self.couplings
    }

    pub fn a(&self) -> &[Complex64] {
        self.couplings.as_slice()
    }

    /// Same frequencies, different couplings.
    pub fn with_couplings(&self, couplings: Couplings) -> Result<Self, ModelError> {
        Self::new(self.freqs.clone(), couplings)
    }
}

/// `s(r)_j = sin(mu_j r)`.
pub fn trig_s(freqs: &Frequencies, r: f64) -> Vec<f64> {
    freqs.as_slice().iter().map(|m| (m * r).sin()).collect()
}

/// `c(r)_j = cos(mu_j r)`.
pub fn trig_c(freqs: &Frequencies, r: f64) -> Vec<f64> {
    freqs.as_slice().iter().map(|m| (m * r).cos()).collect()
}

/// Bounded part of a Gram entry: `g_ij = h_ij` off the diagonal and
/// `g_ii = r/2 + h_ii` on it.
///
/// Two distinct frequencies never need a series expansion: the divisor
/// `mu_i - mu_j` does not depend on `r`.
pub fn h_entry(mu_i: f64, mu_j: f64, r: f64) -> f64 {
    if mu_i == mu_j {
        -(2.0 * mu_i * r).sin() / (4.0 * mu_i)
    } else {
        let d = mu_i - mu_j;
        let s = mu_i + mu_j;
        (d * r).sin() / (2.0 * d) - (s * r).sin() / (2.0 * s)
    }
}

/// `int_0^r sin(mu_i t) sin(mu_j t) dt` from the closed form.
pub fn gram_entry(mu_i: f64, mu_j: f64, r: f64) -> f64 {
    if mu_i == mu_j {
        0.5 * r + h_entry(mu_i, mu_i, r)
    } else {
        h_entry(mu_i, mu_j, r)
    }
}

fn symmetric_fill(n: usize, f: impl Fn(usize, usize) -> f64) -> Vec<f64> {
    let mut m = vec![0.0; n * n];
    for i in 0..n {
        for j in i..n {
            let v = f(i, j);
            m[i * n + j] = v;
            m[j * n + i] = v;
        }
    }
    m
}

/// `G(r)`, stored row-major. Symmetric by construction.
#[derive(Debug, Clone, PartialEq)]
pub struct GramMatrix {
    pub r: f64,
    n: usize,
    g: Vec<f64>,
}

impl GramMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.g[i * self.n + j]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.g
    }

    /// Real quadratic form `<xi, G xi>` with the conjugate-linear first slot.
    pub fn quadratic_form(&self, xi: &[Complex64]) -> Complex64 {
        let n = self.n;
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..n {
            let mut row = Complex64::new(0.0, 0.0);
            for j in 0..n {
                row += xi[j] * self.g[i * n + j];
            }
            acc += xi[i].conj() * row;
        }
        acc
    }
}

pub fn gram_matrix(freqs: &Frequencies, r: f64) -> GramMatrix {
    let mu = freqs.as_slice();
    GramMatrix {
        r,
        n: mu.len(),
        g: symmetric_fill(mu.len(), |i, j| gram_entry(mu[i], mu[j], r)),
    }
}

/// `H(r) = G(r) - (r/2) I`, uniformly bounded in `r`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundedPart {
    pub r: f64,
    n: usize,
    h: Vec<f64>,
}

impl BoundedPart {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.h[i * self.n + j]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.h
    }
}

pub fn h_matrix(freqs: &Frequencies, r: f64) -> BoundedPart {
    let mu = freqs.as_slice();
    BoundedPart {
        r,
        n: mu.len(),
        h: symmetric_fill(mu.len(), |i, j| h_entry(mu[i], mu[j], r)),
    }
}

/// Uniform bound on `|h_ij(r)|` implied by the closed form.
pub fn h_entry_bound(mu_i: f64, mu_j: f64) -> f64 {
    if mu_i == mu_j {
        1.0 / (4.0 * mu_i)
    } else {
        1.0 / (2.0 * (mu_i - mu_j).abs()) + 1.0 / (2.0 * (mu_i + mu_j))
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PositivityError {
    #[error("radius must be positive, got {0}")]
    NonPositiveRadius(f64),
    #[error("test vector is zero")]
    ZeroVector,
    #[error("kernel defect: <xi, G(r) xi> = {value} is not positive at r = {r}")]
    NotPositive { r: f64, value: f64 },
}

/// `<xi, G(r) xi>`; positive for every `r > 0` and `xi != 0`.
pub fn gram_positivity_check(
    freqs: &Frequencies,
    r: f64,
    xi: &[Complex64],
) -> Result<f64, PositivityError> {
    if !(r > 0.0) {
        return Err(PositivityError::NonPositiveRadius(r));
    }
    if xi.iter().all(|z| z.norm_sqr() == 0.0) {
        return Err(PositivityError::ZeroVector);
    }
    let value = gram_matrix(freqs, r).quadratic_form(xi).re;
    if value > 0.0 {
        Ok(value)
    } else {
        Err(PositivityError::NotPositive { r, value })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn freqs(mu: &[f64]) -> Frequencies {
        Frequencies::new(mu.to_vec()).unwrap()
    }

    #[test]
    fn trig_vectors() {
        assert_eq!(trig_s(&freqs(&[1.0]), 0.0), vec![0.0]);
        assert!((trig_s(&freqs(&[1.0]), PI / 2.0)[0] - 1.0).abs() < 1e-15);
        assert_eq!(trig_c(&freqs(&[1.0]), 0.0), vec![1.0]);
        let c = trig_c(&freqs(&[2.0, 1.0]), PI);
        assert!((c[0] - 1.0).abs() < 1e-15 && (c[1] + 1.0).abs() < 1e-15);
    }

    #[test]
    fn trig_against_taylor_series() {
        // power series summed independently of libm
        fn sin_series(x: f64) -> f64 {
            let (mut term, mut sum) = (x, x);
            for k in 1..30 {
                term *= -x * x / ((2 * k) as f64 * (2 * k + 1) as f64);
                sum += term;
            }
            sum
        }
        fn cos_series(x: f64) -> f64 {
            let (mut term, mut sum) = (1.0, 1.0);
            for k in 1..30 {
                term *= -x * x / ((2 * k - 1) as f64 * (2 * k) as f64);
                sum += term;
            }
            sum
        }
        let f = freqs(&[3.0, 2.0, 1.0]);
        let s = trig_s(&f, 0.7);
        let c = trig_c(&f, 0.7);
        for (k, x) in [2.1, 1.4, 0.7].into_iter().enumerate() {
            assert!((s[k] - sin_series(x)).abs() < 1e-14);
            assert!((c[k] - cos_series(x)).abs() < 1e-14);
        }
    }

    #[test]
    fn gram_entry_closed_forms() {
        for r in [0.0f64, 0.3, 1.0, 7.5] {
            let expected = r / 2.0 - (2.0 * r).sin() / 4.0;
            assert!((gram_entry(1.0, 1.0, r) - expected).abs() < 1e-15);
        }
        assert_eq!(gram_entry(2.0, 1.0, 0.0), 0.0);
        let expected = 1f64.sin() / 2.0 - 3f64.sin() / 6.0;
        assert!((gram_entry(2.0, 1.0, 1.0) - expected).abs() < 1e-15);
        assert_eq!(gram_entry(2.0, 1.0, 1.3), gram_entry(1.0, 2.0, 1.3));
    }

    #[test]
    fn gram_and_h_matrices() {
        let f = freqs(&[3.0, 2.0, 1.0]);
        assert!(gram_matrix(&f, 0.0).as_slice().iter().all(|&x| x == 0.0));
        assert!(h_matrix(&f, 0.0).as_slice().iter().all(|&x| x == 0.0));
        let g = gram_matrix(&f, 2.5);
        let h = h_matrix(&f, 2.5);
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(g.get(i, j), g.get(j, i));
                let diag = if i == j { 1.25 } else { 0.0 };
                assert!((g.get(i, j) - diag - h.get(i, j)).abs() < 1e-15);
            }
        }
        let one = h_matrix(&freqs(&[1.0]), 0.8);
        assert!((one.get(0, 0) + (1.6f64).sin() / 4.0).abs() < 1e-16);
    }

    #[test]
    fn h_bound_sweep() {
        let bound = h_entry_bound(2.0, 1.0);
        assert!((bound - (0.5 + 1.0 / 6.0)).abs() < 1e-15);
        let sup = (0..200_000)
            .map(|k| h_entry(2.0, 1.0, k as f64 * 1e-3))
            .fold(0.0f64, |m, x| m.max(x.abs()));
        assert!(sup <= bound);
        assert!(sup > 0.9 * bound);
    }

    #[test]
    fn mean_value_cubic_bound() {
        let mu = [3.0, 2.0, 1.0];
        for k in 1..2000 {
            let r = k as f64 * 0.01;
            for &a in &mu {
                for &b in &mu {
                    assert!(gram_entry(a, b, r).abs() <= a * b * r.powi(3) * (1.0 + 1e-12));
                }
            }
        }
    }

    #[test]
    fn positivity() {
        let v = gram_positivity_check(&freqs(&[1.0]), PI, &[Complex64::new(1.0, 0.0)]).unwrap();
        assert!((v - PI / 2.0).abs() < 1e-15);
        let f = freqs(&[2.0, 1.0]);
        let xi = [Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.0)];
        let v = gram_positivity_check(&f, 1.0, &xi).unwrap();
        let closed = gram_entry(2.0, 2.0, 1.0) + gram_entry(1.0, 1.0, 1.0)
            - 2.0 * gram_entry(2.0, 1.0, 1.0);
        assert!((v - closed).abs() < 1e-15 && v > 0.0);
        assert!(matches!(
            gram_positivity_check(&f, 0.0, &xi),
            Err(PositivityError::NonPositiveRadius(_))
        ));
        assert!(matches!(
            gram_positivity_check(&f, 1.0, &[Complex64::new(0.0, 0.0); 2]),
            Err(PositivityError::ZeroVector)
        ));
    }

    #[test]
    fn model_validation_messages() {
        let err = ModelConfig::real(&[1.0, 2.0], &[1.0, 1.0]).unwrap_err();
        assert_eq!(err.to_string(), "mu_1 <= mu_2 (frequencies must be strictly decreasing)");
        let err = ModelConfig::real(&[2.0, 1.0], &[1.0, -1.0]).unwrap_err();
        assert_eq!(err.to_string(), "Re(a_2) < 0");
        let err = ModelConfig::real(&[2.0, 1.0], &[0.0, 1.0]).unwrap_err();
        assert_eq!(err.to_string(), "a_1 = 0");
        assert!(ModelConfig::real(&[], &[]).is_err());
        assert!(ModelConfig::real(&[1.0, -1.0], &[1.0, 1.0]).is_err());
        assert!(ModelConfig::real(&[2.0, 1.0], &[1.0]).is_err());
        // purely imaginary couplings are admissible
        let a = vec![Complex64::new(0.0, 1.0)];
        assert!(ModelConfig::from_parts(vec![1.0], a).is_ok());
    }
}
