//! The full verification suite behind `ewlab verify`.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::config::RunConfig;
use super::report::{Check, VerificationReport};
use crate::construct::{self, log_det_derivative};
use crate::grid::GridSpec;
use crate::kernel::{gram_entry, gram_positivity_check, h_entry, h_entry_bound, trig_s, ModelConfig};
use crate::oracle::{self, log_spaced, AsymptoticWindow, OracleError};
use crate::radial3d;

/// Grids, steps and tolerances for the suite.
#[derive(Debug, Clone, PartialEq)]
pub struct VerifySettings {
    pub quadrature_triples: usize,
    pub quadrature_max_r: f64,
    pub quadrature_tol: f64,
    pub positivity_radii: Vec<f64>,
    pub positivity_trials: usize,
    pub residual_grid: GridSpec,
    pub residual_tol: f64,
    pub shooting_grid: GridSpec,
    pub shooting_tol: f64,
    pub identity_radii: usize,
    pub identity_max_r: f64,
    pub gram_fd_step: f64,
    pub derivative_fd_step: f64,
    pub log_det_step: f64,
    pub fd_ratio_band: (f64, f64),
    pub rk4_ratio_band: (f64, f64),
    pub slope_band: f64,
    pub small_r: (f64, f64),
    pub radial_grid: GridSpec,
}

impl Default for VerifySettings {
    fn default() -> Self {
        Self {
            quadrature_triples: 20,
            quadrature_max_r: 20.0,
            quadrature_tol: 1e-12,
            positivity_radii: vec![0.1, 1.0, 10.0, 100.0],
            positivity_trials: 100,
            residual_grid: GridSpec::new(0.0, 50.0, 1e-3).expect("static grid"),
            residual_tol: 1e-4,
            shooting_grid: GridSpec::new(0.1, 30.0, 1e-3).expect("static grid"),
            shooting_tol: 1e-7,
            identity_radii: 50,
            identity_max_r: 50.0,
            gram_fd_step: 1e-4,
            derivative_fd_step: 1e-3,
            log_det_step: 1e-3,
            fd_ratio_band: (3.0, 5.0),
            rk4_ratio_band: (10.0, 24.0),
            slope_band: 0.2,
            small_r: (1e-3, 1e-1),
            radial_grid: GridSpec::new(0.5, 30.0, 1e-2).expect("static grid"),
        }
    }
}

/// Independent streams per check, so adding a check never shifts another's draws.
fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn seeded_radii(seed: u64, stream: u64, count: usize, max_r: f64) -> Vec<f64> {
    let mut rng = rng_for(seed, stream);
    (0..count).map(|_| rng.gen_range(0.0..max_r)).collect()
}

pub fn run_verification(
    run: &RunConfig,
    settings: &VerifySettings,
) -> Result<VerificationReport, OracleError> {
    let mut report = VerificationReport::new(run.to_file());
    let cfg = &run.model;
    report.notes.push(
        "essential spectrum [0, inf) is not checked: a truncated probe cannot resolve it".into(),
    );
    gram_checks(&mut report, cfg, run.seed, settings)?;
    identity_checks(&mut report, cfg, run.seed, settings)?;
    eigenfunction_checks(&mut report, cfg, &run.grid, settings)?;
    ode_checks(&mut report, cfg, settings)?;
    asymptotic_checks(&mut report, cfg, settings)?;
    radial_checks(&mut report, cfg, settings)?;
    Ok(report)
}

fn gram_checks(
    report: &mut VerificationReport,
    cfg: &ModelConfig,
    seed: u64,
    s: &VerifySettings,
) -> Result<(), OracleError> {
    let mu = cfg.mu();
    let n = mu.len();
    let mut rng = rng_for(seed, 1);
    let mut worst = 0.0f64;
    for _ in 0..s.quadrature_triples {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        let r = rng.gen_range(0.0..s.quadrature_max_r);
        let q = oracle::quadrature_gram(mu[i], mu[j], r, s.quadrature_tol)?;
        worst = worst.max((q - gram_entry(mu[i], mu[j], r)).abs());
    }
    report.push(
        "gram.closed_form_vs_quadrature",
        Check::at_most(worst, 1e-10).with("triples", s.quadrature_triples),
    );

    let mut rng = rng_for(seed, 2);
    let mut min_ratio = f64::INFINITY;
    let mut defect = None;
    for &r in &s.positivity_radii {
        for _ in 0..s.positivity_trials {
            let xi: Vec<Complex64> = (0..n)
                .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect();
            let norm2: f64 = xi.iter().map(|z| z.norm_sqr()).sum();
            match gram_positivity_check(cfg.freqs(), r, &xi) {
                Ok(v) => min_ratio = min_ratio.min(v / norm2),
                Err(e) => {
                    defect.get_or_insert(e.to_string());
                    min_ratio = min_ratio.min(0.0);
                }
            }
        }
    }
    let mut check = Check::above(min_ratio, 0.0).with("radii", &s.positivity_radii);
    if let Some(d) = defect {
        check = check.with("defect", d);
    }
    report.push("gram.positivity", check);

    // mean-value bound |g_ij| <= mu_i mu_j r^3 and the uniform bound on h_ij
    let radii: Vec<f64> = (1..=4000).map(|k| k as f64 * 0.025).collect();
    let mut cubic = 0.0f64;
    let mut hb = 0.0f64;
    for &r in &radii {
        for i in 0..n {
            for j in 0..n {
                cubic = cubic.max(gram_entry(mu[i], mu[j], r).abs() / (mu[i] * mu[j] * r.powi(3)));
                hb = hb.max(h_entry(mu[i], mu[j], r).abs() / h_entry_bound(mu[i], mu[j]));
            }
        }
    }
    report.push(
        "gram.cubic_bound",
        Check::at_most(cubic, 1.0 + 1e-12).with("quantity", "max |g_ij| / (mu_i mu_j r^3)"),
    );
    report.push(
        "gram.h_bound",
        Check::at_most(hb, 1.0 + 1e-12).with("quantity", "max |h_ij| / bound_ij"),
    );
    Ok(())
}

fn identity_checks(
    report: &mut VerificationReport,
    cfg: &ModelConfig,
    seed: u64,
    s: &VerifySettings,
) -> Result<(), OracleError> {
    let radii = seeded_radii(seed, 3, s.identity_radii, s.identity_max_r);
    let comm = radii
        .iter()
        .map(|&r| oracle::commutator_identity_error(cfg, r))
        .fold(0.0, f64::max);
    report.push("identity.commutator", Check::at_most(comm, 1e-12));

    let (mut e1, mut e2) = (0.0f64, 0.0f64);
    for &r in &radii {
        let (a, b) = oracle::gram_derivative_error(cfg, r, s.gram_fd_step);
        e1 = e1.max(a);
        e2 = e2.max(b);
    }
    report.push(
        "identity.gram_derivative.ratio",
        Check::within(e1 / e2, s.fd_ratio_band.0, s.fd_ratio_band.1)
            .with("error_h", e1)
            .with("error_h_half", e2)
            .with("h", s.gram_fd_step),
    );

    // (log det)' = -s^T v
    let (mut l1, mut l2) = (0.0f64, 0.0f64);
    for &r in &radii {
        let v = construct::eigenfunction_values(cfg, r)?;
        let stv: Complex64 = trig_s(cfg.freqs(), r).iter().zip(&v).map(|(a, b)| b * a).sum();
        let h = s.log_det_step;
        l1 = l1.max((log_det_derivative(cfg, r, h)? + stv).norm());
        l2 = l2.max((log_det_derivative(cfg, r, h / 2.0)? + stv).norm());
    }
    report.push(
        "identity.log_det_first.ratio",
        Check::within(l1 / l2, s.fd_ratio_band.0, s.fd_ratio_band.1)
            .with("error_h", l1)
            .with("error_h_half", l2),
    );

    // V = -2 (log det)''
    let interior: Vec<f64> = radii.iter().copied().filter(|&r| r > s.log_det_step).collect();
    let d1 = oracle::log_det_identity_error(cfg, &interior, s.log_det_step)?;
    let d2 = oracle::log_det_identity_error(cfg, &interior, s.log_det_step / 2.0)?;
    report.push(
        "identity.log_det_second.ratio",
        Check::within(d1 / d2, s.fd_ratio_band.0, s.fd_ratio_band.1)
            .with("error_h", d1)
            .with("error_h_half", d2)
            .with("h", s.log_det_step),
    );
    Ok(())
}

fn eigenfunction_checks(
    report: &mut VerificationReport,
    cfg: &ModelConfig,
    grid: &GridSpec,
    s: &VerifySettings,
) -> Result<(), OracleError> {
    let f0 = construct::frame(cfg, 0.0)?;
    let mut origin = f0.v.iter().map(|z| z.norm()).fold(0.0, f64::max);
    origin = origin.max(f0.potential(cfg).norm());
    for (j, vp) in f0.v_prime.iter().enumerate() {
        origin = origin.max((vp + Complex64::new(cfg.mu()[j], 0.0) / cfg.a()[j]).norm());
    }
    report.push(
        "eigenfunction.origin",
        Check::at_most(origin, 0.0).with("quantity", "max(|v(0)|, |V(0)|, |v'(0) + mu/a|)"),
    );

    // analytic v' against central differences of v
    let h = s.derivative_fd_step;
    let radii: Vec<f64> = (1..=40).map(|k| k as f64 * 0.61).collect();
    let fd_err = |h: f64| -> Result<f64, OracleError> {
        let mut worst = 0.0f64;
        for &r in &radii {
            let vp = construct::eigenfunction_derivative(cfg, r)?;
            let up = construct::eigenfunction_values(cfg, r + h)?;
            let dn = construct::eigenfunction_values(cfg, r - h)?;
            for j in 0..cfg.n() {
                worst = worst.max(((up[j] - dn[j]) / (2.0 * h) - vp[j]).norm());
            }
        }
        Ok(worst)
    };
    let (a, b) = (fd_err(h)?, fd_err(h / 2.0)?);
    report.push(
        "eigenfunction.derivative_fd.ratio",
        Check::within(a / b, s.fd_ratio_band.0, s.fd_ratio_band.1)
            .with("error_h", a)
            .with("error_h_half", b)
            .with("h", h),
    );

    // sweeps over the configured grid
    let sweep = |g: &GridSpec| -> Result<(f64, f64, f64, f64, f64), OracleError> {
        let (mut max_v, mut max_im, mut cert, mut dcert, mut max_re) = (0.0f64, 0.0f64, 0.0f64, 0.0f64, 0.0f64);
        for r in g.nodes() {
            let f = construct::frame(cfg, r)?;
            let pot = f.potential(cfg);
            max_v = max_v.max(pot.norm());
            max_re = max_re.max(pot.re.abs());
            max_im = max_im.max(pot.im.abs());
            for j in 0..cfg.n() {
                if r > 0.0 {
                    cert = cert.max(f.v[j].norm() * (1.0 + r * r) / r);
                }
                dcert = dcert.max(f.v_prime[j].norm() * (1.0 + r));
            }
        }
        Ok((max_v, max_im, cert, dcert, max_re))
    };
    let (max_v, max_im, cert, dcert, _) = sweep(grid)?;
    let (_, _, cert_fine, _, _) = sweep(&grid.refined())?;
    report.push(
        "potential.bounded",
        Check::finite(max_v).with("grid", [grid.start, grid.end, grid.step]),
    );
    if cfg.couplings().is_real() {
        report.push(
            "potential.reality",
            Check::at_most(max_im, 1e-12 * (1.0 + max_v)).with("max_abs_v", max_v),
        );
        report.push(
            "potential.complexity",
            Check::not_applicable(max_im, "n/a (real mode)"),
        );
    } else {
        report.push(
            "potential.reality",
            Check::not_applicable(max_im, "n/a (complex mode)"),
        );
        report.push(
            "potential.complexity",
            Check::above(max_im, 0.0).with("max_abs_v", max_v),
        );
    }
    let drift = (cert_fine - cert).abs() / cert;
    report.push(
        "eigenfunction.bound_certificate",
        Check::at_most(drift, 1e-2)
            .with("constant", cert)
            .with("constant_refined", cert_fine)
            .with("quantity", "relative change of max |v_j| (1 + r^2) / r under refinement"),
    );
    report.push(
        "eigenfunction.derivative_bound",
        Check::finite(dcert).with("quantity", "max |v_j'| (1 + r)"),
    );
    Ok(())
}

fn ode_checks(
    report: &mut VerificationReport,
    cfg: &ModelConfig,
    s: &VerifySettings,
) -> Result<(), OracleError> {
    for rep in oracle::residual_eigen_equation_all(cfg, &s.residual_grid)? {
        let j = rep.j + 1;
        report.push(
            format!("eigen_residual.j{j}.sup"),
            Check::at_most(rep.sup_residual, s.residual_tol).with("h", rep.grid.step),
        );
        report.push(
            format!("eigen_residual.j{j}.ratio"),
            Check::within(rep.convergence_ratio, s.fd_ratio_band.0, s.fd_ratio_band.1)
                .with("sup_h", rep.sup_residual)
                .with("sup_h_half", rep.sup_residual_refined),
        );
    }
    for rep in oracle::shooting_order_all(cfg, &s.shooting_grid)? {
        let j = rep.j + 1;
        report.push(
            format!("shooting.j{j}.deviation"),
            Check::at_most(rep.sup_residual, s.shooting_tol).with("h", rep.grid.step),
        );
        report.push(
            format!("shooting.j{j}.ratio"),
            Check::within(rep.convergence_ratio, s.rk4_ratio_band.0, s.rk4_ratio_band.1)
                .with("deviation_h", rep.sup_residual)
                .with("deviation_h_half", rep.sup_residual_refined),
        );
    }
    Ok(())
}

fn asymptotic_checks(
    report: &mut VerificationReport,
    cfg: &ModelConfig,
    s: &VerifySettings,
) -> Result<(), OracleError> {
    let window = AsymptoticWindow::standard(cfg);
    let band = s.slope_band;
    let slope = |fit: &oracle::DecayFit, expected: f64| {
        Check::near(fit.slope, expected, band).with("points", fit.points)
    };
    let p = oracle::potential_asymptotics_fit(cfg, &window)?;
    report.push("asymptotics.potential.magnitude_slope", slope(&p.magnitude, -1.0));
    report.push("asymptotics.potential.leading_slope", slope(&p.leading, -2.0));
    report.push("asymptotics.potential.refined_slope", slope(&p.refined, -3.0));
    report.push(
        "asymptotics.potential.remainder_r3",
        Check::finite(p.refined.scaled_max).with("quantity", "max |V - leading - second| r^3"),
    );
    let inv = oracle::inverse_matrix_asymptotics(cfg, &window)?;
    report.push("asymptotics.inverse.leading_slope", slope(&inv.leading, -2.0));
    report.push("asymptotics.inverse.refined_slope", slope(&inv.refined, -3.0));
    let small = log_spaced(s.small_r.0, s.small_r.1, 40);
    report.push(
        "asymptotics.inverse.small_r_slope",
        slope(&oracle::inverse_small_r(cfg, &small)?, 3.0),
    );
    let v = oracle::eigenfunction_asymptotics(cfg, &window)?;
    report.push("asymptotics.eigenfunction.leading_slope", slope(&v.leading, -2.0));
    report.push("asymptotics.eigenfunction.refined_slope", slope(&v.refined, -3.0));
    let (linear, sine) = small_r_fits(cfg, &small)?;
    report.push("asymptotics.eigenfunction.small_r_linear_slope", slope(&linear, 3.0));
    report.push("asymptotics.eigenfunction.small_r_sine_slope", slope(&sine, 4.0));
    let d = oracle::vprime_asymptotics(cfg, &window)?;
    report.push("asymptotics.derivative.leading_slope", slope(&d.leading, -2.0));
    report.push("asymptotics.derivative.refined_slope", slope(&d.refined, -3.0));
    Ok(())
}

/// Small-radius fits of `v_j + mu_j r / a_j` and `v_j + sin(mu_j r) / a_j`.
pub fn small_r_fits(
    cfg: &ModelConfig,
    radii: &[f64],
) -> Result<(oracle::DecayFit, oracle::DecayFit), OracleError> {
    let remainder = |sine: bool| {
        move |r: f64| -> Result<f64, OracleError> {
            let v = construct::eigenfunction_values(cfg, r)?;
            Ok((0..cfg.n())
                .map(|j| {
                    let m = cfg.mu()[j];
                    let lead = if sine { (m * r).sin() } else { m * r };
                    (v[j] + Complex64::new(lead, 0.0) / cfg.a()[j]).norm()
                })
                .fold(0.0, f64::max))
        }
    };
    Ok((
        oracle::fit_decay(radii, 0.0, 1, remainder(false))?,
        oracle::fit_decay(radii, 0.0, 1, remainder(true))?,
    ))
}

fn radial_checks(
    report: &mut VerificationReport,
    cfg: &ModelConfig,
    s: &VerifySettings,
) -> Result<(), OracleError> {
    let g = &s.radial_grid;
    for j in 0..cfg.n() {
        let a = radial3d::radial_laplacian_residual(cfg, j, g, 3)?;
        let b = radial3d::radial_laplacian_residual(cfg, j, &g.refined(), 3)?;
        report.push(
            format!("radial3d.d3.j{}.ratio", j + 1),
            Check::within(a / b, s.fd_ratio_band.0, s.fd_ratio_band.1)
                .with("sup_h", a)
                .with("sup_h_half", b),
        );
    }
    for d in [2u32, 4, 5] {
        let (a, b, c) = (
            radial3d::radial_laplacian_residual(cfg, 0, g, d)?,
            radial3d::radial_laplacian_residual(cfg, 0, &g.refined(), d)?,
            radial3d::radial_laplacian_residual(cfg, 0, &g.refined().refined(), d)?,
        );
        // successive differences must contract: the residual settles on a limit
        let contraction = (a - b).abs() / (b - c).abs();
        report.push(
            format!("radial3d.d{d}.stabilized"),
            Check::above(contraction, 1.5)
                .with("sup_h", a)
                .with("sup_h_half", b)
                .with("sup_h_quarter", c)
                .with("quantity", "|sup_h - sup_h/2| / |sup_h/2 - sup_h/4|"),
        );
        report.push(format!("radial3d.d{d}.nonzero"), Check::above(c, 1e-2));
    }
    let d1 = GridSpec::new(0.0, g.end, g.step).expect("valid grid");
    let a = radial3d::radial_laplacian_residual_constant(cfg, 0, &d1, 1)?;
    let b = radial3d::radial_laplacian_residual_constant(cfg, 0, &d1.refined(), 1)?;
    report.push(
        "radial3d.d1_constant.ratio",
        Check::within(a / b, s.fd_ratio_band.0, s.fd_ratio_band.1)
            .with("sup_h", a)
            .with("sup_h_half", b),
    );
    let obstruction = [1u32, 2, 3, 5]
        .iter()
        .map(|&d| (d, radial3d::dimension_obstruction(d)))
        .collect::<Vec<_>>();
    let exact = [(1, 0.0), (2, 0.25), (3, 0.0), (5, -2.0)];
    let mismatch = obstruction
        .iter()
        .zip(exact)
        .map(|((_, got), (_, want))| (got - want).abs())
        .fold(0.0, f64::max);
    report.push(
        "radial3d.obstruction",
        Check::at_most(mismatch, 0.0).with("values", obstruction),
    );
    Ok(())
}
