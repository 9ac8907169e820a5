use ewlab::construct::{coupled_gram, eigenfunction_values, frame};
use ewlab::kernel::{gram_entry, gram_positivity_check};
use ewlab::linalg::{dense_solve, ComplexDense, ComplexTridiagonal};
use ewlab::oracle::quadrature_gram;
use ewlab::{Frequencies, ModelConfig};
use num_complex::Complex64;
use proptest::prelude::*;

fn complex() -> impl Strategy<Value = Complex64> {
    (-2.0..2.0f64, -2.0..2.0f64).prop_map(|(re, im)| Complex64::new(re, im))
}

/// Strictly decreasing frequencies with a gap of at least 0.05.
fn frequencies(max_n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.05..1.0f64, 1..=max_n).prop_map(|gaps| {
        let mut mu: Vec<f64> = gaps
            .iter()
            .scan(0.0, |acc, g| {
                *acc += g;
                Some(*acc)
            })
            .collect();
        mu.reverse();
        mu
    })
}

fn model(max_n: usize) -> impl Strategy<Value = ModelConfig> {
    frequencies(max_n).prop_flat_map(|mu| {
        let n = mu.len();
        prop::collection::vec((0.0..3.0f64, -2.0..2.0f64), n).prop_filter_map(
            "nonzero coupling",
            move |a| {
                let a = a.into_iter().map(|(re, im)| Complex64::new(re, im)).collect();
                ModelConfig::from_parts(mu.clone(), a).ok()
            },
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gram_matches_quadrature(mu in frequencies(3), i in 0usize..3, j in 0usize..3, r in 0.0..15.0f64) {
        let (i, j) = (i % mu.len(), j % mu.len());
        let q = quadrature_gram(mu[i], mu[j], r, 1e-12).unwrap();
        prop_assert!((q - gram_entry(mu[i], mu[j], r)).abs() <= 1e-10);
    }

    #[test]
    fn gram_symmetric(a in 0.01..5.0f64, b in 0.01..5.0f64, r in 0.0..100.0f64) {
        prop_assert_eq!(gram_entry(a, b, r), gram_entry(b, a, r));
    }

    #[test]
    fn gram_positive(mu in frequencies(4), r in 0.05..200.0f64, xi in prop::collection::vec(complex(), 4)) {
        let freqs = Frequencies::new(mu.clone()).unwrap();
        let xi = &xi[..mu.len()];
        prop_assume!(xi.iter().any(|z| z.norm() > 1e-3));
        prop_assert!(gram_positivity_check(&freqs, r, xi).unwrap() > 0.0);
    }

    #[test]
    fn dense_solve_residual(entries in prop::collection::vec(complex(), 16), b in prop::collection::vec(complex(), 4)) {
        let mut m = ComplexDense::from_row_major(4, entries).unwrap();
        for k in 0..4 {
            m.set(k, k, m.get(k, k) + 10.0);
        }
        let x = dense_solve(&m, &b).unwrap();
        let res = m.matvec(&x).iter().zip(&b).map(|(p, q)| (p - q).norm()).fold(0.0, f64::max);
        prop_assert!(res <= 1e-12 * (1.0 + m.norm_one()));
    }

    #[test]
    fn tridiagonal_matches_dense(
        k in 2usize..40,
        seed in prop::collection::vec(complex(), 120),
        b in prop::collection::vec(complex(), 40),
    ) {
        let sub = seed[..k - 1].to_vec();
        let sup = seed[40..39 + k].to_vec();
        let diag: Vec<Complex64> = seed[80..80 + k].iter().map(|z| z + 5.0).collect();
        let t = ComplexTridiagonal::new(sub, diag, sup).unwrap();
        let x = t.factor().unwrap().solve(&b[..k]).unwrap();
        let y = dense_solve(&t.to_dense(), &b[..k]).unwrap();
        let diff = x.iter().zip(&y).map(|(p, q)| (p - q).norm()).fold(0.0, f64::max);
        prop_assert!(diff <= 1e-11);
    }

    #[test]
    fn resolvent_solves_system(cfg in model(3), r in 0.0..60.0f64) {
        let v = eigenfunction_values(&cfg, r).unwrap();
        let m = coupled_gram(&cfg, r);
        let s: Vec<f64> = cfg.mu().iter().map(|m| (m * r).sin()).collect();
        let res = m.matvec(&v).iter().zip(&s).map(|(p, q)| (p + q).norm()).fold(0.0, f64::max);
        prop_assert!(res <= 1e-10 * (1.0 + m.norm_one()));
    }

    #[test]
    fn real_couplings_give_real_potential(mu in frequencies(3), r in 0.0..60.0f64, a in prop::collection::vec(0.1..3.0f64, 3)) {
        let cfg = ModelConfig::real(&mu, &a[..mu.len()]).unwrap();
        let v = frame(&cfg, r).unwrap().potential(&cfg);
        prop_assert!(v.im.abs() <= 1e-12 * (1.0 + v.re.abs()));
    }
}
