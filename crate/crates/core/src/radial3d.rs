//! Spherically symmetric lift to three dimensions, and why no other
//! dimension (besides the half-line itself) admits the same lift.
//!
//! With `u(x) = a(|x|) v(|x|)`, the radial Laplacian
//! `u'' + ((d-1)/r) u'` reduces to `a v''` only if `a = r^{(1-d)/2}` and
//! `a'' + ((d-1)/r) a' = -(d-1)(d-3)/4 r^{-(d+3)/2}` vanishes.

use num_complex::Complex64;

use crate::construct::{self, ConstructError};
use crate::grid::GridSpec;
use crate::kernel::ModelConfig;
use crate::oracle::{sample_frames, OracleError};

/// `u_j(r) = v_j(r) / r` on a grid, with the removable value at the origin.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialLift {
    pub j: usize,
    pub radii: Vec<f64>,
    pub values: Vec<Complex64>,
    /// `lim_{r -> 0} v_j(r) / r = -mu_j / a_j`.
    pub origin_value: Complex64,
}

pub fn lift_to_3d(
    config: &ModelConfig,
    j: usize,
    grid: &GridSpec,
) -> Result<RadialLift, ConstructError> {
    if j >= config.n() {
        return Err(ConstructError::IndexOutOfRange { j, n: config.n() });
    }
    let origin_value = -Complex64::new(config.mu()[j], 0.0) / config.a()[j];
    let mut radii = Vec::with_capacity(grid.len());
    let mut values = Vec::with_capacity(grid.len());
    for r in grid.nodes() {
        let u = if r == 0.0 {
            origin_value
        } else {
            construct::eigenfunction_values(config, r)?[j] / r
        };
        radii.push(r);
        values.push(u);
    }
    Ok(RadialLift {
        j,
        radii,
        values,
        origin_value,
    })
}

/// `-(d-1)(d-3)/4`, the coefficient of the term that survives in dimension `d`.
pub fn dimension_obstruction(d: u32) -> f64 {
    let d = d as f64;
    // `+ 0.0` turns the -0.0 at d = 3 into 0.0
    -(d - 1.0) * (d - 3.0) / 4.0 + 0.0
}

/// Radial weight used for dimension `d`: `r^{(1-d)/2}`, or the constant 1
/// when `constant_weight` is set.
fn weight(r: f64, d: u32, constant_weight: bool) -> f64 {
    if constant_weight {
        1.0
    } else {
        r.powf((1.0 - d as f64) / 2.0)
    }
}

/// `sup |-u'' - ((d-1)/r) u' + V u - mu_j^2 u|` over interior nodes, with
/// `u = r^{(1-d)/2} v_j` and both derivatives from central differences.
pub fn radial_laplacian_residual(
    config: &ModelConfig,
    j: usize,
    grid: &GridSpec,
    d: u32,
) -> Result<f64, OracleError> {
    residual_impl(config, j, grid, d, false)
}

/// As [`radial_laplacian_residual`] with `a(r) = 1`; for `d = 1` this is
/// the half-line equation itself.
pub fn radial_laplacian_residual_constant(
    config: &ModelConfig,
    j: usize,
    grid: &GridSpec,
    d: u32,
) -> Result<f64, OracleError> {
    residual_impl(config, j, grid, d, true)
}

fn residual_impl(
    config: &ModelConfig,
    j: usize,
    grid: &GridSpec,
    d: u32,
    constant_weight: bool,
) -> Result<f64, OracleError> {
    if j >= config.n() {
        return Err(OracleError::IndexOutOfRange { j, n: config.n() });
    }
    let interior = grid.len().saturating_sub(2);
    if interior < 8 {
        return Err(OracleError::GridTooCoarse(interior));
    }
    if !(grid.start > 0.0) && !(constant_weight && d == 1) {
        return Err(OracleError::Construct(ConstructError::InvalidRadius(grid.start)));
    }
    let frames = sample_frames(config, grid)?;
    let u: Vec<Complex64> = frames
        .iter()
        .map(|f| f.v[j] * weight(f.r, d, constant_weight))
        .collect();
    let h = grid.step;
    let mu2 = config.mu()[j] * config.mu()[j];
    let dm1 = d as f64 - 1.0;
    let mut sup = 0.0f64;
    for k in 1..u.len() - 1 {
        let r = frames[k].r;
        let second = (u[k - 1] - u[k] * 2.0 + u[k + 1]) / (h * h);
        let first = (u[k + 1] - u[k - 1]) / (2.0 * h);
        let drift = if dm1 == 0.0 { Complex64::new(0.0, 0.0) } else { first * (dm1 / r) };
        let pot = frames[k].potential(config);
        let res = -second - drift + pot * u[k] - u[k] * mu2;
        sup = sup.max(res.norm());
    }
    Ok(sup)
}
