//! Acceptance suite: every release criterion, implemented at its stated
//! tolerance, one pass/fail line per criterion (visible with
//! `cargo test --test acceptance -- --nocapture`).
//!
//! Criteria 3, 4 and 6 encode published target bands that the measurement
//! pipeline does not reproduce from the real primes and zeros; they are
//! implemented exactly as stated and left to fail rather than being
//! loosened. The failure analysis lives alongside the project notes.

use std::path::Path;
use std::process::Command;
use std::sync::OnceLock;
use std::time::Instant;

use pzlab_core::duality::{self, scale_sweep, SweepOutcome, SweepParams};
use pzlab_core::fractal;
use pzlab_core::modular;
use pzlab_core::numeric;
use pzlab_core::regularity;
use pzlab_core::resample::stream_rng;
use pzlab_core::rg;
use pzlab_core::scaling::{self, Model};
use pzlab_core::synth;
use pzlab_core::zeros::ZeroTable;

fn report(n: u32, ok: bool, detail: &str) {
    let status = if ok { "PASS" } else { "FAIL" };
    println!("ACCEPTANCE {n:02} {status}: {detail}");
    assert!(ok, "criterion {n}: {detail}");
}

#[test]
fn criterion_01_cantor_benchmark() {
    let t0 = Instant::now();
    let points = synth::cantor_points(8).unwrap();
    let est = fractal::box_dimension_default(&points).unwrap();
    let elapsed = t0.elapsed().as_secs_f64();
    let ok = (0.61..=0.65).contains(&est.value) && elapsed < 1.0;
    report(
        1,
        ok,
        &format!(
            "cantor depth-8 d = {:.4} (band [0.61, 0.65]), runtime {elapsed:.3}s (< 1s)",
            est.value
        ),
    );
}

#[test]
fn criterion_02_weierstrass_benchmark() {
    let t0 = Instant::now();
    let field = synth::weierstrass_field(0.5, 30, 4096).unwrap();
    let est = regularity::holder_default(&field).unwrap();
    let elapsed = t0.elapsed().as_secs_f64();
    let ok = (1.43..=1.55).contains(&est.zeta_r) && elapsed < 5.0;
    report(
        2,
        ok,
        &format!(
            "weierstrass H=0.5 zeta_R = {:.4} (band [1.43, 1.55]), runtime {elapsed:.3}s (< 5s)",
            est.zeta_r
        ),
    );
}

#[test]
fn criterion_03_table2_band_at_l1000() {
    let t0 = Instant::now();
    let params = SweepParams {
        bootstrap_n: 200,
        seed: 0,
        ..Default::default()
    };
    let out = scale_sweep(&[1000.0], ZeroTable::canonical(), &params);
    let elapsed = t0.elapsed().as_secs_f64();
    let rec = &out.records[0];
    let dp_ok = (0.35..=0.51).contains(&rec.d_p.value);
    let zr_ok = (0.58..=0.68).contains(&rec.zeta_r.zeta_r);
    let ok = dp_ok && zr_ok && elapsed < 60.0;
    report(
        3,
        ok,
        &format!(
            "d_P(1000) = {:.4} (band [0.35, 0.51]), zeta_R(1000) = {:.4} (band [0.58, 0.68]), runtime {elapsed:.1}s (< 60s)",
            rec.d_p.value, rec.zeta_r.zeta_r
        ),
    );
}

fn full_sweep() -> &'static SweepOutcome {
    static SWEEP: OnceLock<SweepOutcome> = OnceLock::new();
    SWEEP.get_or_init(|| {
        let params = SweepParams {
            bootstrap_n: 100,
            seed: 0,
            ..Default::default()
        };
        scale_sweep(&synth::paper_scales(), ZeroTable::canonical(), &params)
    })
}

#[test]
fn criterion_04_table3_band_at_l2000() {
    let out = full_sweep();
    let identities_ok = out
        .records
        .iter()
        .all(|r| r.c_beta4 == 2.0 * r.c_beta2 && r.c_beta2 == 2.0 * r.k);
    let k2000 = out
        .records
        .iter()
        .find(|r| r.l == 2000.0)
        .map(|r| r.k)
        .unwrap_or(f64::NAN);
    let k_ok = (3.55..=4.05).contains(&k2000);
    report(
        4,
        k_ok && identities_ok,
        &format!(
            "K(2000) = {k2000:.4} (band [3.55, 4.05]); C(4) = 2 C(2) exact on all {} records: {identities_ok}",
            out.records.len()
        ),
    );
}

#[test]
fn criterion_05_scaling_fit_self_inverse() {
    let scales = synth::paper_scales();
    // (a) noiseless recovery at 1e-3 relative
    let (ls, cs) = synth::power_sweep(7.154, 20.0, 0.51, &scales, 0.0, 1).unwrap();
    let fit = scaling::fit_model(Model::Power, &ls, &cs).unwrap();
    let rel = |got: f64, want: f64| (got - want).abs() / want;
    let exact_ok = rel(fit.c_inf, 7.154) < 1e-3
        && rel(fit.a, 20.0) < 1e-3
        && rel(fit.b.unwrap(), 0.51) < 1e-3;
    // (b) b within 0.02 at noise_sd = 0.02
    let (ls_n, cs_n) = synth::power_sweep(7.154, 20.0, 0.51, &scales, 0.02, 2).unwrap();
    let fit_n = scaling::fit_model(Model::Power, &ls_n, &cs_n).unwrap();
    let noisy_ok = (fit_n.b.unwrap() - 0.51).abs() <= 0.02;
    // (c) AIC picks power on >= 95 of 100 seeded trials
    let mut wins = 0;
    for seed in 0..100u64 {
        let (ls_t, cs_t) = synth::power_sweep(7.154, 20.0, 0.51, &scales, 0.02, seed).unwrap();
        let fits = vec![
            scaling::fit_model(Model::Power, &ls_t, &cs_t).unwrap(),
            scaling::fit_model(Model::LinearInv, &ls_t, &cs_t).unwrap(),
            scaling::fit_model(Model::LogInv, &ls_t, &cs_t).unwrap(),
        ];
        let (best, _) = scaling::aic_select(&fits).unwrap();
        if best.model == Model::Power {
            wins += 1;
        }
    }
    let ok = exact_ok && noisy_ok && wins >= 95;
    report(
        5,
        ok,
        &format!(
            "noiseless (c,a,b) = ({:.4}, {:.4}, {:.4}) at 1e-3 rel: {exact_ok}; noisy b = {:.4} (+-0.02): {noisy_ok}; AIC power wins {wins}/100 (>= 95)",
            fit.c_inf,
            fit.a,
            fit.b.unwrap(),
            fit_n.b.unwrap()
        ),
    );
}

#[test]
fn criterion_06_trend_property() {
    let out = full_sweep();
    let ls: Vec<f64> = out.records.iter().map(|r| r.l).collect();
    let ks: Vec<f64> = out.records.iter().map(|r| r.k).collect();
    let rho = numeric::spearman(&ls, &ks).unwrap();
    let fit = scaling::fit_model(Model::Power, &ls, &ks).unwrap();
    let mut lx = Vec::new();
    let mut ly = Vec::new();
    for (l, k) in ls.iter().zip(&ks) {
        if k - fit.c_inf > 0.0 {
            lx.push(l.ln());
            ly.push((k - fit.c_inf).ln());
        }
    }
    let tail = numeric::ols(&lx, &ly).unwrap().slope;
    let ok = rho < 0.0 && (-0.9..=-0.2).contains(&tail);
    report(
        6,
        ok,
        &format!(
            "spearman(L, K) = {rho:.4} (< 0); tail slope of K - {:.3} is {tail:.4} (band [-0.9, -0.2])",
            fit.c_inf
        ),
    );
}

#[test]
fn criterion_07_rg_equivalence() {
    let alpha = 1.0 / 14.0;
    // (a) ODE vs closed form to 1e-6 over L in [1, 1e6]
    let ls: Vec<f64> = (0..=24).map(|i| 10f64.powf(i as f64 / 4.0)).collect();
    let mut max_gap = 0.0f64;
    for &k0 in &[5.0, 7.5, 10.8] {
        for p in rg::integrate_k_of_l(k0, alpha, &ls).unwrap() {
            max_gap = max_gap.max((p.k_ode - p.k_closed).abs());
        }
    }
    let ode_ok = max_gap < 1e-6;
    // (b) tail exponent = 7 alpha within 1%
    let tail_ls: Vec<f64> = (16..=28).map(|i| 10f64.powf(i as f64 / 2.0)).collect();
    let recs: Vec<(f64, f64)> = tail_ls
        .iter()
        .map(|&l| (l, rg::closed_form_k(l, 10.8, alpha)))
        .collect();
    let tail = rg::tail_exponent(&recs).unwrap();
    let tail_ok = (tail + 7.0 * alpha).abs() / (7.0 * alpha) < 0.01;
    // (c) discrete beta recovers alpha within 2%
    let fit_ls: Vec<f64> = (0..=30).map(|i| 100.0 * 1.13f64.powi(i)).collect();
    let fit_recs: Vec<(f64, f64)> = fit_ls
        .iter()
        .map(|&l| (l, rg::closed_form_k(l, 4.627, alpha)))
        .collect();
    let (alpha_hat, _) = rg::discrete_beta(&fit_recs).unwrap();
    let beta_ok = (alpha_hat - alpha).abs() / alpha < 0.02;
    let ok = ode_ok && tail_ok && beta_ok;
    report(
        7,
        ok,
        &format!(
            "max |ode - closed| = {max_gap:.2e} (< 1e-6); tail = {tail:.5} vs -7a = {:.5} (1%); alpha_hat = {alpha_hat:.5} vs 1/14 (2%)",
            -7.0 * alpha
        ),
    );
}

#[test]
fn criterion_08_modified_flow_identities() {
    use rand::Rng;
    let mut rng = stream_rng(2024, 0, 0);
    let mut worst = 0.0f64;
    let mut all_stable = true;
    for _ in 0..1000 {
        let spec = rg::ModifiedFlowSpec::new(
            rng.gen_range(-3.0..3.0),
            rng.gen_range(1e-4..3.0),
            rng.gen_range(1e-4..3.0),
            rng.gen_range(0.02..8.0),
            rng.gen_range(0.5..10.0),
        )
        .unwrap();
        let rep = rg::modified_flow_analysis(&spec).unwrap();
        let identity = spec.mu * spec.nu * (spec.r + 1.0).powi(2) + spec.kappa * spec.kappa;
        worst = worst.max((rep.det - identity).abs());
        all_stable &= rep.trace < 0.0;
    }
    let fp = rg::ModifiedFlowSpec::new(0.685, 0.003, 0.581, 1.0, 4.0)
        .unwrap()
        .fixed_point();
    let fp_ok = fp == (2.0, 2.0);
    let ok = worst < 1e-10 && all_stable && fp_ok;
    report(
        8,
        ok,
        &format!(
            "det identity worst |gap| = {worst:.2e} (< 1e-10) over 1000 draws; trace < 0 everywhere: {all_stable}; fixed point (K=4, r=1) = ({}, {})",
            fp.0, fp.1
        ),
    );
}

#[test]
fn criterion_09_survey_reproduction() {
    let expect: [(u64, i64, f64, f64); 12] = [
        (1, 3, 1.9248, 10.19),
        (3, 4, 2.6339, 4.96),
        (4, 6, 3.5255, 3.21),
        (5, 3, 1.9248, 4.79),
        (7, 5, 3.1336, 2.53),
        (8, 6, 3.5255, 2.61),
        (11, 3, 1.9248, 3.78),
        (20, 10, 4.5849, 2.51),
        (24, 10, 4.5849, 2.53),
        (32, 14, 5.2678, 2.38),
        (36, 34, 7.0510, 2.08),
        (1, 3, 1.9248, 6.65),
    ];
    let fixture = modular::canonical_survey_fixture();
    let mut trace_ok = true;
    let mut ell_ok = true;
    let mut rf_named_ok = true;
    let mut rf_max_gap = 0.0f64;
    let mut bound_ok = true;
    for ((_, _, n, gamma1), (n_e, t_e, ell_e, rf_e)) in fixture.iter().zip(&expect) {
        assert_eq!(n, n_e);
        let (t_min, _) = modular::min_hyperbolic_trace(*n);
        trace_ok &= t_min == *t_e;
        let ell = modular::geodesic_length(t_min).unwrap();
        ell_ok &= (ell - ell_e).abs() < 5e-5;
        let (rf, _) = modular::uv_ir_ratio(*gamma1, ell).unwrap();
        rf_max_gap = rf_max_gap.max((rf - rf_e).abs());
        // the three R_f values the criterion cites, strictly to 2 decimals
        for cited in [10.19, 4.79, 2.08] {
            if (*rf_e - cited).abs() < 1e-9 {
                rf_named_ok &= (rf - cited).abs() < 0.005;
            }
        }
        bound_ok &= rf >= 1.0 / 0.685;
    }
    // enumeration cross-oracle for N <= 50 runs in the modular unit suite;
    // rerun the congruence values here against a direct scan
    let mut cross_ok = true;
    for n in 1..=50u64 {
        let (t_fast, w) = modular::min_hyperbolic_trace(n);
        cross_ok &= (w[0][0] * w[1][1] - w[0][1] * w[1][0]) == 1;
        let mut found = None;
        't: for t in 3..=(n as i64 + 2) {
            for a in 0..n as i64 {
                if (a * (t - a) - 1).rem_euclid(n as i64) == 0 {
                    found = Some(t);
                    break 't;
                }
            }
        }
        cross_ok &= found == Some(t_fast);
    }
    // the printed table rounds one gamma1 coarsely (chi mod 7 gives
    // R_f = 2.5246, printed 2.53), so the full column agrees within 0.011
    let rf_all_ok = rf_max_gap <= 0.011;
    let ok = trace_ok && ell_ok && rf_named_ok && rf_all_ok && bound_ok && cross_ok;
    report(
        9,
        ok,
        &format!(
            "t_min exact: {trace_ok}; ell to 4 decimals: {ell_ok}; cited R_f to 2 decimals: {rf_named_ok} (max column gap {rf_max_gap:.4}); R_f >= 1/0.685 on all rows: {bound_ok}; witness/cross-scan N<=50: {cross_ok}"
        ),
    );
}

#[test]
fn criterion_10_entropy_closed_form() {
    let closed = duality::semicircle_entropy();
    let quad = duality::semicircle_entropy_quadrature();
    let target = 1.337877;
    let closed_ok = (closed - quad).abs() < 1e-6 && (closed - target).abs() < 1e-6;
    // Poisson synthetic: Exp(1) spacings have differential entropy 1 nat.
    use rand_distr::Distribution;
    let mut rng = stream_rng(10, 0, 0);
    let exp = rand_distr::Exp::new(1.0).unwrap();
    let samples: Vec<f64> = (0..20_000).map(|_| exp.sample(&mut rng)).collect();
    let h = duality::differential_entropy(&samples).unwrap();
    let poisson_ok = (h.nats - 1.0).abs() <= 0.1;
    let ok = closed_ok && poisson_ok;
    report(
        10,
        ok,
        &format!(
            "semicircle closed {closed:.6} vs quadrature {quad:.6} (1e-6, target 1.337877): {closed_ok}; Poisson entropy {:.4} (1.0 +- 0.1): {poisson_ok}",
            h.nats
        ),
    );
}

#[test]
fn criterion_11_normalization() {
    use rand::Rng;
    let mut rng = stream_rng(11, 0, 0);
    let mut floor_ok = true;
    let mut iff_ok = true;
    for i in 0..100_000u32 {
        let i_p: f64 = rng.gen_range(0.05..10.0);
        // alternate between exactly-equal and well-separated pairs so the
        // equality biconditional is exercised in both directions
        let i_z = if i % 2 == 0 {
            i_p
        } else {
            let mut v: f64 = rng.gen_range(0.05..10.0);
            while (v - i_p).abs() < 1e-3 {
                v = rng.gen_range(0.05..10.0);
            }
            v
        };
        let n = duality::normalize(i_p, i_z).unwrap();
        floor_ok &= n.k_norm >= 4.0 - 1e-12;
        let eq_k = (n.k_norm - 4.0).abs() < 1e-9;
        let eq_i = (i_p - i_z).abs() < 1e-9;
        iff_ok &= eq_k == eq_i;
    }
    let dp39 = duality::dp_from_k(3.9).unwrap();
    let dp36 = duality::dp_from_k(3.6).unwrap();
    let dp_ok = (dp39 - 0.41).abs() < 0.005 && (dp36 - 0.47).abs() < 0.005;
    let ok = floor_ok && iff_ok && dp_ok;
    report(
        11,
        ok,
        &format!(
            "K_norm >= 4 on 1e5 pairs: {floor_ok}; equality-iff-equal at 1e-9: {iff_ok}; dP(K=3.9) = {dp39:.4} ~ 0.41 and dP(K=3.6) = {dp36:.4} ~ 0.47: {dp_ok}"
        ),
    );
}

#[test]
fn criterion_12_cli_determinism() {
    let run = |dir: &Path| {
        for args in [
            vec![
                "sweep",
                "--scales",
                "400,600,800",
                "--bootstrap",
                "100",
                "--seed",
                "21",
                "--no-timestamp",
            ],
            vec!["survey"],
            vec!["rg", "modified", "--i0", "3,1"],
            vec!["rg", "integrate", "--points", "50"],
            vec!["dim", "--limit", "900"],
            vec!["zr", "--l", "600"],
            vec!["entropy", "spacings", "--t-max", "1500"],
            vec!["compress", "--n", "4000"],
        ] {
            let out = Command::new(env!("CARGO_BIN_EXE_pzlab"))
                .args(&args)
                .arg("--out")
                .arg(dir)
                .env("PZLAB_THREADS", "2")
                .output()
                .expect("binary runs");
            assert!(
                out.status.success(),
                "{args:?}: {}",
                String::from_utf8_lossy(&out.stderr)
            );
        }
    };
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    run(a.path());
    run(b.path());
    let files = [
        "sweep.csv",
        "fit_report.json",
        "survey.csv",
        "modified_stability.json",
        "modified_trajectory.csv",
        "rg_trajectory.csv",
        "dim.json",
        "points.csv",
        "zr.json",
        "variation_profile.csv",
        "entropy_spacings.json",
        "compress.json",
        "indicator.txt",
    ];
    let mut same = true;
    for name in files {
        let x = std::fs::read(a.path().join(name)).unwrap();
        let y = std::fs::read(b.path().join(name)).unwrap();
        same &= x == y;
    }
    report(
        12,
        same,
        &format!("{} CSV/JSON artifacts byte-identical across re-runs", files.len()),
    );
}
