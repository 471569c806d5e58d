mod common;

use common::*;
use mdsrel::special::{hamming_ball_volume, log_binomial, q_ary_entropy, regularized_upper_gamma};
use mdsrel::*;
use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

fn exact_ln_choose(n: u64, i: u64) -> f64 {
    let mut c = BigUint::one();
    for m in 0..i {
        c *= BigUint::from(n - m);
        c /= BigUint::from(m + 1);
    }
    let bits = c.bits();
    let shift = bits.saturating_sub(64);
    let top = (&c >> shift).to_u64().unwrap() as f64;
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

#[test]
fn log_binomial_matches_big_integers() {
    for (n, i) in [(3000, 1500), (3000, 7), (10_000, 4321), (500, 250), (64, 32)] {
        let got = log_binomial(n, i).unwrap();
        let want = exact_ln_choose(n, i);
        assert!(rel_err(got, want) < 1e-12, "C({n},{i}): {got} vs {want}");
    }
    assert!((log_binomial(4, 2).unwrap() - 6f64.ln()).abs() < 1e-15);
    assert_eq!(log_binomial(9, 0).unwrap(), 0.0);
    assert!(log_binomial(2, 3).is_err());
}

#[test]
fn upper_gamma_against_quadrature() {
    assert_eq!(regularized_upper_gamma(4.2, 0.0).unwrap(), 1.0);

    let tail = simpson(|t| t * (-t).exp(), 1.0, 60.0, 20_000);
    let v = regularized_upper_gamma(2.0, 1.0).unwrap();
    assert!(rel_err(v, tail) < 1e-10);
    assert!((v - 0.735759).abs() < 1e-6);

    let v = regularized_upper_gamma(50.0, 5.0).unwrap();
    let ln_g50 = mdsrel::special::ln_gamma(50.0);
    let lower = simpson(|t| (49.0 * t.ln() - t - ln_g50).exp(), 1e-9, 5.0, 20_000);
    // The exact value is 1 - 2.2e-32, which rounds to 1; the strict upper
    // bound shows up as a positive lower tail.
    assert!(v > 1.0 - 5.0 / 44.0 && v <= 1.0);
    assert!(rel_err(lower, 2.181059214078488e-32) < 1e-6);
    assert!((v - (1.0 - lower)).abs() < 1e-14);
    assert!(rel_err(v, poisson_cdf_below(50, 5.0)) < 1e-14);

    // Non-integer shape: quadrature of the upper tail.
    let a: f64 = 2.5;
    let ln_ga = mdsrel::special::ln_gamma(a);
    let upper = simpson(|t| ((a - 1.0) * t.ln() - t - ln_ga).exp(), 3.0, 80.0, 40_000);
    assert!(rel_err(regularized_upper_gamma(a, 3.0).unwrap(), upper) < 1e-9);

    for (a, b) in [(3u64, 0.5), (8, 9.0), (20, 35.0), (120, 100.0)] {
        let v = regularized_upper_gamma(a as f64, b).unwrap();
        assert!(rel_err(v, poisson_cdf_below(a, b)) < 1e-11, "Q({a},{b})");
    }
}

#[test]
fn entropy_and_ball_examples() {
    assert_eq!(q_ary_entropy(2.0, 0.0).unwrap(), 0.0);
    assert!((q_ary_entropy(2.0, 0.5).unwrap() - 1.0).abs() < 1e-15);
    assert!((q_ary_entropy(4.0, 0.75).unwrap() - 1.0).abs() < 1e-15);
    assert!(q_ary_entropy(1.0, 0.5).is_err());
    assert!(q_ary_entropy(2.0, 1.5).is_err());

    let v = hamming_ball_volume(4, 1, 2.0).unwrap();
    assert!((v - 5f64.ln()).abs() < 1e-15);
    assert_eq!(hamming_ball_volume(12, 0, 3.0).unwrap(), 0.0);
    assert!(hamming_ball_volume(4, 5, 2.0).is_err());
    let exponent = v / 2f64.ln();
    assert!((exponent - 2.321928094887362).abs() < 1e-12);
    assert!(exponent <= 4.0 * q_ary_entropy(2.0, 0.25).unwrap());
}

#[test]
fn reliability_and_density_examples() {
    let m = ConstantHazard::new(1e-3).unwrap();
    assert_eq!(reliability(&m, 0.0).unwrap(), 1.0);
    assert!((reliability(&m, 1000.0).unwrap() - (-1f64).exp()).abs() < 1e-15);
    assert!(reliability(&m, -1.0).is_err());
    assert!(density(&m, -1.0).is_err());
    assert!(rel_err(density(&m, 250.0).unwrap(), 1e-3 * (-0.25f64).exp()) < 1e-15);

    let bt = CompositeBathtub::paper_default();
    let (t1, _) = bt.breakpoints();
    let left = reliability(&bt, t1 * (1.0 - 1e-15)).unwrap();
    let at = reliability(&bt, t1).unwrap();
    assert!(rel_err(left, at) < 1e-12);

    let w = Weibull::new(1.7, 300.0).unwrap();
    assert_eq!(density(&w, 0.0).unwrap(), w.hazard(0.0));
    for model in [&bt as &dyn HazardModel, &w, &m] {
        let x = 300.0;
        let fd = -central_diff(|y| model.reliability(y), x);
        assert!(rel_err(density(model, x).unwrap(), fd) < 1e-6, "{model:?}");
    }
}

#[test]
fn lifetime_examples() {
    let one = ArrayConfig::from_pairs(&[(1, 1)]).unwrap();
    let m = ConstantHazard::new(1e-6).unwrap();
    let est = mttf(|x| system_survival(x, &one, &m).unwrap(), 1e-9).unwrap();
    assert!(rel_err(est.mttf, 1e6) < 1e-4);

    let lambda = 0.004;
    let m = ConstantHazard::new(lambda).unwrap();
    let mirror = ArrayConfig::from_pairs(&[(2, 1)]).unwrap();
    let est = mttf(|x| system_survival(x, &mirror, &m).unwrap(), 1e-9).unwrap();
    assert!(rel_err(est.mttf, 1.5 / lambda) < 1e-6);

    let est = mttf(|x| if x > 0.0 { 0.0 } else { 1.0 }, 1e-6).unwrap();
    assert_eq!(est.mttf, 0.0);
    assert!(mttf(|_| 1.0, 1e-6).is_err());
    assert!(mttf(|x| (-x).exp(), 0.5).is_err());

    assert!((afr(1e6).unwrap() - 0.008722).abs() < 1e-6);
    assert!((afr(8760.0).unwrap() - 0.632121).abs() < 1e-6);
    assert!((afr(1.5e6).unwrap() - 0.005823).abs() < 1e-6);
    assert!(afr(0.0).is_err());
    assert!(afr(-3.0).is_err());
}

#[test]
fn sampling_examples() {
    let lambda = 0.01;
    let m = ConstantHazard::new(lambda).unwrap();
    assert!(rel_err(sample_ttf(&m, (-1f64).exp()).unwrap(), 1.0 / lambda) < 1e-15);
    for bad in [0.0, 1.0, -0.2, 1.5, f64::NAN] {
        assert!(sample_ttf(&m, bad).is_err());
    }
    let bt = CompositeBathtub::paper_default();
    let (t1, t2) = bt.breakpoints();
    assert_eq!(sample_ttf(&bt, (-bt.cumulative_hazard(t1)).exp()).unwrap(), t1);
    let back = sample_ttf(&bt, (-bt.cumulative_hazard(t2)).exp()).unwrap();
    assert!(rel_err(back, t2) < 1e-12);

    let n = 100_000u64;
    let mut total = 0.0;
    for i in 0..n {
        let mut rng = sim::trial_stream(2024, i);
        total += sample_ttf(&m, sim::open_unit(&mut rng)).unwrap();
    }
    let mean = total / n as f64;
    assert!((mean - 100.0).abs() < 3.0 * 100.0 / (n as f64).sqrt(), "mean {mean}");
}

#[test]
fn psi_examples() {
    assert_eq!(psi(7, 7, 0.3).unwrap(), 1.0);
    assert!(rel_err(psi(0, 6, 0.8).unwrap(), 0.8f64.powi(6)) < 1e-14);
    let direct = 0.9f64.powi(4) + 4.0 * 0.1 * 0.9f64.powi(3);
    assert!(rel_err(psi(1, 4, 0.9).unwrap(), direct) < 1e-14);
    assert!((psi(1, 4, 0.9).unwrap() - 0.9477).abs() < 1e-12);
    assert!(psi(5, 4, 0.9).is_err());
    assert!(psi(1, 4, 1.1).is_err());

    assert!(rel_err(psi_z(0, 2, 4, 0.9).unwrap(), psi(2, 4, 0.9).unwrap()) < 1e-15);
    assert_eq!(psi_z(3, 2, 4, 0.9).unwrap(), 0.0);
    let lhs = psi_z(1, 2, 4, 0.9).unwrap();
    let rhs = 4.0 * 0.1 * psi(1, 3, 0.9).unwrap();
    assert!(rel_err(lhs, rhs) < 1e-14);
}

/// The ratio form `λ/r (1 - ψ_{t-1}(n-1) / ψ_t(n))`, evaluated literally.
fn ratio_form(x: f64, n: u64, k: u64, model: &dyn HazardModel) -> f64 {
    let r = model.reliability(x);
    let t = n - k;
    let ratio = psi(t - 1, n - 1, r).unwrap() / psi(t, n, r).unwrap();
    model.hazard(x) / (k as f64 / n as f64) * (1.0 - ratio)
}

#[test]
fn mu_c_examples() {
    let bt = CompositeBathtub::paper_default();
    let cst = ConstantHazard::new(0.01).unwrap();
    for x in [0.0, 3.0, 150.0, 2500.0] {
        let code = MdsCode::new(12, 12).unwrap();
        assert_eq!(mu_c(x, &code, &bt).unwrap(), bt.hazard(x));
    }

    // Repetition closed form and the literal ratio form.
    for x in [5.0, 50.0, 400.0] {
        for n in [2u64, 3, 6] {
            let r = cst.reliability(x);
            let f = 1.0 - r;
            let closed = n as f64 * 0.01 * r * f.powi(n as i32 - 1) / (1.0 - f.powi(n as i32));
            let got = mu_c(x, &MdsCode::repetition(n).unwrap(), &cst).unwrap();
            assert!(rel_err(got, closed) < 1e-12, "x={x} n={n}");
        }
        for (n, k) in [(4u64, 3u64), (10, 6), (25, 15)] {
            // The literal form loses about one ulp of λ/r to cancellation.
            let got = mu_c(x, &MdsCode::new(n, k).unwrap(), &cst).unwrap();
            let slack = 8.0 * f64::EPSILON * 0.01 * n as f64 / k as f64;
            assert!((got - ratio_form(x, n, k, &cst)).abs() <= slack, "x={x} ({n},{k})");
        }
    }

    // k μ_c = -d ln ψ_t(n) / dx at x = 10 for the (4,3) code.
    let code = MdsCode::new(4, 3).unwrap();
    let fd = central_diff(|y| neg_ln_survival(&[(4, 3)], &cst, y), 10.0);
    assert!(rel_err(3.0 * mu_c(10.0, &code, &cst).unwrap(), fd) < 1e-6);
    assert!(mu_c(-1.0, &code, &cst).is_err());
}

#[test]
fn mu_c_underflow_is_reported() {
    let m = ConstantHazard::new(1.0).unwrap();
    let code = MdsCode::new(10, 5).unwrap();
    match mu_c(1e308, &code, &m) {
        Err(Error::NumericOverflow { n, t, .. }) => assert_eq!((n, t), (10, 5)),
        other => panic!("expected an overflow error, got {other:?}"),
    }
}

#[test]
fn lower_bound_examples() {
    let cst = ConstantHazard::new(0.01).unwrap();
    let code = MdsCode::new(10, 8).unwrap();
    // R(x) >= r.
    assert_eq!(mu_c_lower_bound(5.0, &code, &cst).unwrap(), 0.0);
    assert_eq!(mu_c_lower_bound(0.0, &code, &cst).unwrap(), 0.0);
    // R -> 0.
    let far = mu_c_lower_bound(1e5, &code, &cst).unwrap();
    assert!(rel_err(far, 0.01) < 1e-12);
    // R = 0.5, r = 0.8.
    let x = 2f64.ln() / 0.01;
    let v = mu_c_lower_bound(x, &code, &cst).unwrap();
    assert!((v - 0.0075).abs() < 1e-15);
}

#[test]
fn corollary_examples() {
    let cst = ConstantHazard::new(0.01).unwrap();
    let bt = CompositeBathtub::paper_default();
    assert_eq!(repetition_mu_c(70.0, 1, &bt).unwrap(), bt.hazard(70.0));
    assert!(repetition_mu_c(1.0, 0, &bt).is_err());

    let lambda = 2e-4;
    let small = ConstantHazard::new(lambda).unwrap();
    for n in [2u64, 3, 4] {
        let x: f64 = 1.0;
        let approx = n as f64 * lambda.powi(n as i32) * x.powi(n as i32 - 1);
        assert!(rel_err(repetition_mu_c(x, n, &small).unwrap(), approx) < 1e-3);
    }
    let far = repetition_mu_c(5000.0, 3, &cst).unwrap();
    assert!(rel_err(far, 0.01) < 1e-12);

    assert_eq!(parity_mu_c(0.0, 4, &cst).unwrap(), 0.0);
    assert!(rel_err(parity_mu_c(1e5, 4, &cst).unwrap(), 0.01) < 1e-12);
    let x = -(0.9f64.ln()) / 0.01;
    let v = parity_mu_c(x, 4, &cst).unwrap();
    assert!((v - 0.01 * 0.4 / 1.3).abs() < 1e-12);
    assert!((v - 0.0030769).abs() < 1e-7);
    assert!(parity_mu_c(1.0, 1, &cst).is_err());
}

#[test]
fn asymptotic_examples() {
    let q = 1.5;
    assert!(asymptotic_mu_c(q, 1.0 / q, 0.01).unwrap().abs() < 1e-17);
    assert!((asymptotic_mu_c(q, 0.8, 0.01).unwrap() - 0.005).abs() < 1e-15);
    assert_eq!(asymptotic_mu_c(q, 0.5, 0.01).unwrap(), 0.0);
    assert!(asymptotic_mu_c(0.9, 0.5, 0.01).is_err());

    let cst = ConstantHazard::new(0.01).unwrap();
    assert!(rel_err(solve_time_for_q(&cst, std::f64::consts::E).unwrap(), 100.0) < 1e-14);
    assert!((solve_time_for_q(&cst, 2.0).unwrap() - 69.31471805599453).abs() < 1e-9);
    let bt = CompositeBathtub::paper_default();
    assert!(solve_time_for_q(&bt, 1.0 + 1e-14).unwrap() < 1e-20);

    let flat = TabulatedHazard::new(vec![0.0, 10.0], vec![0.01, 0.0]).unwrap();
    assert!(matches!(solve_time_for_q(&flat, 3.0), Err(Error::NonConvergence { .. })));

    assert_eq!(theorem5_constant(LimitRegime::Wearout, 0.2, 0.5).unwrap(), 2.0);
    assert_eq!(theorem5_constant(LimitRegime::Infancy, 1.0, 0.5).unwrap(), 0.0);
    assert!((theorem5_constant(LimitRegime::Infancy, 0.99, 0.5).unwrap() - 0.042517).abs() < 1e-6);
}

#[test]
fn multidim_examples() {
    let cst = ConstantHazard::new(0.01).unwrap();
    let bt = CompositeBathtub::paper_default();
    for x in [0.5, 40.0, 900.0] {
        for (n, k) in [(4u64, 3u64), (30, 12), (7, 7)] {
            let code = MdsCode::new(n, k).unwrap();
            let one = ArrayConfig::one_dim(code);
            assert!(rel_err(multidim_mu_c(x, &one, &bt).unwrap(), mu_c(x, &code, &bt).unwrap()) < 1e-12);
        }
    }

    let pairs = [(5, 3), (4, 3)];
    let cfg = ArrayConfig::from_pairs(&pairs).unwrap();
    for x in [10.0, 50.0, 100.0] {
        let fd = central_diff(|y| neg_ln_survival(&pairs, &cst, y), x);
        let got = cfg.data_components() as f64 * multidim_mu_c(x, &cfg, &cst).unwrap();
        assert!(rel_err(got, fd) < 1e-5, "x={x}: {got} vs {fd}");
    }
}

#[test]
fn survival_and_density_examples() {
    let cst = ConstantHazard::new(0.01).unwrap();
    let cfg = ArrayConfig::from_pairs(&[(5, 3), (4, 3)]).unwrap();
    assert_eq!(system_survival(0.0, &cfg, &cst).unwrap(), 1.0);
    let single = ArrayConfig::from_pairs(&[(1, 1)]).unwrap();
    assert!(rel_err(system_survival(77.0, &single, &cst).unwrap(), cst.reliability(77.0)) < 1e-15);
    let parity = ArrayConfig::from_pairs(&[(4, 3)]).unwrap();
    let x = -(0.9f64.ln()) / 0.01;
    assert!((system_survival(x, &parity, &cst).unwrap() - 0.9477).abs() < 1e-12);

    // Density: t = 0, finite differences, the literal two-term form, tail.
    let series = MdsCode::new(5, 5).unwrap();
    let want = 5.0 * 0.01 * cst.reliability(30.0).powi(5);
    assert!(rel_err(system_density(30.0, &series, &cst).unwrap(), want) < 1e-13);

    let code = MdsCode::new(4, 3).unwrap();
    let fd = -central_diff(|y| system_survival(y, &parity, &cst).unwrap(), 10.0);
    assert!(rel_err(system_density(10.0, &code, &cst).unwrap(), fd) < 1e-6);

    for (n, k) in [(4u64, 3u64), (9, 4), (12, 10)] {
        let code = MdsCode::new(n, k).unwrap();
        for x in [5.0, 60.0, 300.0] {
            let r = cst.reliability(x);
            let t = n - k;
            let literal = 0.01 * n as f64 * psi(t, n, r).unwrap() - 0.01 * psi_z(1, t, n, r).unwrap() / (1.0 - r);
            assert!(rel_err(system_density(x, &code, &cst).unwrap(), literal) < 1e-9, "({n},{k}) x={x}");
        }
    }
    assert!(system_density(1e6, &code, &cst).unwrap() < 1e-300);

    // Density integrates to 1 - S.
    let big = 300.0;
    let mass = simpson(|y| system_density(y, &code, &cst).unwrap(), 0.0, big, 2000);
    assert!((mass - (1.0 - system_survival(big, &parity, &cst).unwrap())).abs() < 1e-5);
    let bt = CompositeBathtub::paper_default();
    let cfg2 = ArrayConfig::from_pairs(&[(5, 3), (4, 3)]).unwrap();
    let mass = simpson(|y| array_density(y, &cfg2, &bt).unwrap(), 1e-9, 800.0, 20_000);
    assert!((mass - (1.0 - system_survival(800.0, &cfg2, &bt).unwrap())).abs() < 1e-5);
}

#[test]
fn array_hazard_examples() {
    let bt = CompositeBathtub::paper_default();
    let cst = ConstantHazard::new(0.01).unwrap();
    let series = ArrayConfig::from_pairs(&[(6, 6)]).unwrap();
    assert!(rel_err(array_hazard(250.0, &series, &bt).unwrap(), 6.0 * bt.hazard(250.0)) < 1e-15);
    let cfg = ArrayConfig::from_pairs(&[(5, 3), (4, 3), (3, 2)]).unwrap();
    assert_eq!(array_hazard(0.0, &cfg, &cst).unwrap(), 0.0);
    let parity = ArrayConfig::from_pairs(&[(4, 3)]).unwrap();
    let code = MdsCode::new(4, 3).unwrap();
    for x in [1.0, 20.0, 200.0] {
        assert_eq!(array_hazard(x, &parity, &cst).unwrap(), 3.0 * mu_c(x, &code, &cst).unwrap());
    }
}

#[test]
fn block_model_round_trips() {
    let cst = ConstantHazard::new(0.01).unwrap();
    let cfg = ArrayConfig::from_pairs(&[(5, 3), (4, 3)]).unwrap();
    let block = BlockModel::new(cfg.clone(), cst);
    for x in [3.0, 40.0, 250.0] {
        assert!(rel_err(block.reliability(x), system_survival(x, &cfg, &cst).unwrap()) < 1e-14);
        assert!(rel_err(block.hazard(x), array_hazard(x, &cfg, &cst).unwrap()) < 1e-14);
        let back = block.inverse_cumulative_hazard(block.cumulative_hazard(x)).unwrap();
        assert!(rel_err(back, x) < 1e-9);
    }
}
