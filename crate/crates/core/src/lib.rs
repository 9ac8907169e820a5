//! Explicit half-line Schrödinger potentials with prescribed embedded
//! eigenvalues, and the numerical machinery that checks them.
//!
//! Given frequencies `mu_1 > ... > mu_n > 0` and diagonal couplings
//! `a_j != 0` with `Re a_j >= 0`, the potential
//! `V(r) = 2 (sum_j sin(mu_j r) v_j(r))'` with
//! `v(r) = -(A + G(r))^{-1} s(r)` has the `v_j` as Dirichlet eigenfunctions
//! at energies `mu_j^2`, embedded in the continuous spectrum.
//!
//! - [`kernel`]: sine vectors and the Gram matrix `G(r)` in closed form.
//! - [`linalg`]: complex dense LU and pivoted tridiagonal solves.
//! - [`construct`]: `v`, `v'`, `V`, `W` and the large-radius expansions.
//! - [`oracle`]: quadrature, finite-difference residuals, RK4 shooting and
//!   log-log decay fits, all independent of the closed forms.
//! - [`spectral`]: discretised Dirichlet Hamiltonian and inverse iteration.
//! - [`radial3d`]: the lift `u_j = v_j / r` to three dimensions and the
//!   dimension obstruction.
//! - [`cli`]: the `ewlab` command-line front end.

pub mod cli;
pub mod construct;
pub mod grid;
pub mod kernel;
pub mod linalg;
pub mod oracle;
pub mod radial3d;
pub mod spectral;

pub use construct::{frame, potential_value, EigenfunctionFrame};
pub use grid::GridSpec;
pub use kernel::{Couplings, Frequencies, ModelConfig, ModelError};
