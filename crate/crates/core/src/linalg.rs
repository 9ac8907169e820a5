//! Small dense and tridiagonal complex linear algebra.
//!
//! Dense systems here are `n x n` with `n` at most a few dozen (the matrix
//! `A + G(r)`), while tridiagonal systems come from the discretised
//! Hamiltonian and may have ~10^6 unknowns. Both factorizations use partial
//! pivoting since neither matrix is Hermitian once `A` is complex.

use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LinalgError {
    #[error("singular matrix: pivot {pivot:e} at step {step} below threshold")]
    SingularMatrix { step: usize, pivot: f64 },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}

const C0: Complex64 = Complex64::new(0.0, 0.0);

/// Relative pivot threshold for dense LU.
pub const DENSE_PIVOT_TOL: f64 = 1e-14;

/// Square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexDense {
    n: usize,
    data: Vec<Complex64>,
}

impl ComplexDense {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![C0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_diag(d: &[Complex64]) -> Self {
        let mut m = Self::zeros(d.len());
        for (i, &z) in d.iter().enumerate() {
            m.data[i * d.len() + i] = z;
        }
        m
    }

    pub fn from_row_major(n: usize, data: Vec<Complex64>) -> Result<Self, LinalgError> {
        if data.len() != n * n {
            return Err(LinalgError::DimensionMismatch {
                expected: n * n,
                got: data.len(),
            });
        }
        Ok(Self { n, data })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, z: Complex64) {
        self.data[i * self.n + j] = z;
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn matvec(&self, x: &[Complex64]) -> Vec<Complex64> {
        self.data
            .chunks_exact(self.n)
            .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Maximum absolute column sum.
    pub fn norm_one(&self) -> f64 {
        (0..self.n)
            .map(|j| (0..self.n).map(|i| self.get(i, j).norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn norm_frobenius(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// LU factorization with partial pivoting, `P M = L U`.
    pub fn lu(&self) -> Result<LuFactors, LinalgError> {
        let n = self.n;
        let scale = self
            .data
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        let threshold = DENSE_PIVOT_TOL * scale;
        let mut lu = self.data.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut swaps = 0usize;
        for k in 0..n {
            let (p, pmag) = (k..n)
                .map(|i| (i, lu[i * n + k].norm()))
                .fold((k, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
            if !(pmag > threshold) {
                return Err(LinalgError::SingularMatrix { step: k, pivot: pmag });
            }
            if p != k {
                for j in 0..n {
                    lu.swap(k * n + j, p * n + j);
                }
                perm.swap(k, p);
                swaps += 1;
            }
            let pivot = lu[k * n + k];
            for i in k + 1..n {
                let f = lu[i * n + k] / pivot;
                lu[i * n + k] = f;
                for j in k + 1..n {
                    let u = lu[k * n + j];
                    lu[i * n + j] -= f * u;
                }
            }
        }
        Ok(LuFactors {
            n,
            lu,
            perm,
            odd: swaps % 2 == 1,
        })
    }
}

/// Packed `L` (unit lower) and `U` with the row permutation.
#[derive(Debug, Clone)]
pub struct LuFactors {
    n: usize,
    lu: Vec<Complex64>,
    perm: Vec<usize>,
    odd: bool,
}

impl LuFactors {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn solve(&self, b: &[Complex64]) -> Result<Vec<Complex64>, LinalgError> {
        let n = self.n;
        if b.len() != n {
            return Err(LinalgError::DimensionMismatch {
                expected: n,
                got: b.len(),
            });
        }
        let mut x: Vec<Complex64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            let mut acc = x[i];
            for j in 0..i {
                acc -= self.lu[i * n + j] * x[j];
            }
            x[i] = acc;
        }
        for i in (0..n).rev() {
            let mut acc = x[i];
            for j in i + 1..n {
                acc -= self.lu[i * n + j] * x[j];
            }
            x[i] = acc / self.lu[i * n + i];
        }
        Ok(x)
    }

    /// Solves `M^H x = b`.
    pub fn solve_adjoint(&self, b: &[Complex64]) -> Result<Vec<Complex64>, LinalgError> {
        let n = self.n;
        if b.len() != n {
            return Err(LinalgError::DimensionMismatch {
                expected: n,
                got: b.len(),
            });
        }
        // M^H = U^H L^H P
        let mut w = b.to_vec();
        for i in 0..n {
            let mut acc = w[i];
            for j in 0..i {
                acc -= self.lu[j * n + i].conj() * w[j];
            }
            w[i] = acc / self.lu[i * n + i].conj();
        }
        for i in (0..n).rev() {
            let mut acc = w[i];
            for j in i + 1..n {
                acc -= self.lu[j * n + i].conj() * w[j];
            }
            w[i] = acc;
        }
        let mut x = vec![C0; n];
        for (i, &p) in self.perm.iter().enumerate() {
            x[p] = w[i];
        }
        Ok(x)
    }

    pub fn determinant(&self) -> Complex64 {
        let d: Complex64 = (0..self.n).map(|i| self.lu[i * self.n + i]).product();
        if self.odd {
            -d
        } else {
            d
        }
    }
}

/// Solves `M x = b` by LU with partial pivoting.
pub fn dense_solve(m: &ComplexDense, b: &[Complex64]) -> Result<Vec<Complex64>, LinalgError> {
    if b.len() != m.n() {
        return Err(LinalgError::DimensionMismatch {
            expected: m.n(),
            got: b.len(),
        });
    }
    m.lu()?.solve(b)
}

fn norm_one_vec(x: &[Complex64]) -> f64 {
    x.iter().map(|z| z.norm()).sum()
}

/// 1-norm condition number estimate `||M||_1 ||M^-1||_1`.
///
/// `||M^-1||_1` comes from Hager's estimator with Higham's refinements
/// (complex sign vectors plus the alternating-sign fallback vector), so
/// the inverse is never formed.
pub fn condition_estimate(m: &ComplexDense) -> Result<f64, LinalgError> {
    let n = m.n();
    let lu = m.lu()?;
    let mut x = vec![Complex64::new(1.0 / n as f64, 0.0); n];
    let mut est = 0.0;
    let mut last_j = usize::MAX;
    for iter in 0..5 {
        let y = lu.solve(&x)?;
        let ny = norm_one_vec(&y);
        if iter > 0 && ny <= est {
            break;
        }
        est = ny;
        let xi: Vec<Complex64> = y
            .iter()
            .map(|z| {
                let a = z.norm();
                if a == 0.0 {
                    Complex64::new(1.0, 0.0)
                } else {
                    z / a
                }
            })
            .collect();
        let z = lu.solve_adjoint(&xi)?;
        let (j, zmax) = z
            .iter()
            .enumerate()
            .map(|(i, w)| (i, w.norm()))
            .fold((0, -1.0), |b, c| if c.1 > b.1 { c } else { b });
        let ztx: f64 = z.iter().zip(&x).map(|(a, b)| (a.conj() * b).re).sum();
        if zmax <= ztx || j == last_j {
            break;
        }
        last_j = j;
        x = vec![C0; n];
        x[j] = Complex64::new(1.0, 0.0);
    }
    if n > 1 {
        let b: Vec<Complex64> = (0..n)
            .map(|i| {
                let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
                Complex64::new(sign * (1.0 + i as f64 / (n - 1) as f64), 0.0)
            })
            .collect();
        let alt = 2.0 * norm_one_vec(&lu.solve(&b)?) / (3.0 * n as f64);
        est = est.max(alt);
    }
    Ok(m.norm_one() * est)
}

/// Tridiagonal complex matrix with sub-, main and super-diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexTridiagonal {
    pub sub: Vec<Complex64>,
    pub diag: Vec<Complex64>,
    pub sup: Vec<Complex64>,
}

impl ComplexTridiagonal {
    pub fn new(
        sub: Vec<Complex64>,
        diag: Vec<Complex64>,
        sup: Vec<Complex64>,
    ) -> Result<Self, LinalgError> {
        let k = diag.len();
        let off = k.saturating_sub(1);
        for len in [sub.len(), sup.len()] {
            if len != off {
                return Err(LinalgError::DimensionMismatch {
                    expected: off,
                    got: len,
                });
            }
        }
        Ok(Self { sub, diag, sup })
    }

    pub fn identity(k: usize) -> Self {
        Self {
            sub: vec![C0; k.saturating_sub(1)],
            diag: vec![Complex64::new(1.0, 0.0); k],
            sup: vec![C0; k.saturating_sub(1)],
        }
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    pub fn matvec(&self, x: &[Complex64]) -> Vec<Complex64> {
        let k = self.len();
        (0..k)
            .map(|i| {
                let mut acc = self.diag[i] * x[i];
                if i > 0 {
                    acc += self.sub[i - 1] * x[i - 1];
                }
                if i + 1 < k {
                    acc += self.sup[i] * x[i + 1];
                }
                acc
            })
            .collect()
    }

    /// `T - shift * I`.
    pub fn shifted(&self, shift: Complex64) -> Self {
        Self {
            sub: self.sub.clone(),
            diag: self.diag.iter().map(|d| d - shift).collect(),
            sup: self.sup.clone(),
        }
    }

    pub fn to_dense(&self) -> ComplexDense {
        let k = self.len();
        let mut m = ComplexDense::zeros(k);
        for i in 0..k {
            m.set(i, i, self.diag[i]);
            if i + 1 < k {
                m.set(i + 1, i, self.sub[i]);
                m.set(i, i + 1, self.sup[i]);
            }
        }
        m
    }

    /// Banded LU with row interchanges; fill-in is one extra superdiagonal.
    pub fn factor(&self) -> Result<TridiagonalLu, LinalgError> {
        let k = self.len();
        let mut dl = self.sub.clone();
        let mut d = self.diag.clone();
        let mut du = self.sup.clone();
        let mut du2 = vec![C0; k.saturating_sub(2)];
        let mut swapped = vec![false; k.saturating_sub(1)];
        for i in 0..k.saturating_sub(1) {
            if d[i].norm() >= dl[i].norm() {
                if d[i].norm() == 0.0 {
                    return Err(LinalgError::SingularMatrix { step: i, pivot: 0.0 });
                }
                let fact = dl[i] / d[i];
                dl[i] = fact;
                d[i + 1] -= fact * du[i];
            } else {
                let fact = d[i] / dl[i];
                d[i] = dl[i];
                dl[i] = fact;
                let temp = du[i];
                du[i] = d[i + 1];
                d[i + 1] = temp - fact * d[i + 1];
                if i + 2 < k {
                    du2[i] = du[i + 1];
                    du[i + 1] = -fact * du[i + 1];
                }
                swapped[i] = true;
            }
        }
        if k > 0 && d[k - 1].norm() == 0.0 {
            return Err(LinalgError::SingularMatrix {
                step: k - 1,
                pivot: 0.0,
            });
        }
        Ok(TridiagonalLu {
            dl,
            d,
            du,
            du2,
            swapped,
        })
    }
}

#[derive(Debug, Clone)]
pub struct TridiagonalLu {
    dl: Vec<Complex64>,
    d: Vec<Complex64>,
    du: Vec<Complex64>,
    du2: Vec<Complex64>,
    swapped: Vec<bool>,
}

impl TridiagonalLu {
    pub fn solve(&self, b: &[Complex64]) -> Result<Vec<Complex64>, LinalgError> {
        let k = self.d.len();
        if b.len() != k {
            return Err(LinalgError::DimensionMismatch {
                expected: k,
                got: b.len(),
            });
        }
        let mut x = b.to_vec();
        for i in 0..k.saturating_sub(1) {
            if self.swapped[i] {
                let temp = x[i];
                x[i] = x[i + 1];
                x[i + 1] = temp - self.dl[i] * x[i];
            } else {
                let xi = x[i];
                x[i + 1] -= self.dl[i] * xi;
            }
        }
        if k == 0 {
            return Ok(x);
        }
        x[k - 1] /= self.d[k - 1];
        if k > 1 {
            x[k - 2] = (x[k - 2] - self.du[k - 2] * x[k - 1]) / self.d[k - 2];
        }
        for i in (0..k.saturating_sub(2)).rev() {
            x[i] = (x[i] - self.du[i] * x[i + 1] - self.du2[i] * x[i + 2]) / self.d[i];
        }
        Ok(x)
    }
}

pub fn tridiag_solve(
    t: &ComplexTridiagonal,
    b: &[Complex64],
) -> Result<Vec<Complex64>, LinalgError> {
    t.factor()?.solve(b)
}
