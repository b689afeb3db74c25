//! `pzlab sweep`: the per-scale (d_P, zeta_R, K, C(beta)) table, the
//! three-model extrapolation report, and the convergence figure.

use serde::Serialize;

use pzlab_core::duality::{scale_sweep, SweepOutcome, SweepParams};
use pzlab_core::scaling::{self, Model, ScalingFit};

use crate::config::{ensure_out_dir, RunConfig};
use crate::errors::CliResult;
use crate::report;
use crate::svg::{Plot, Series};

#[derive(Serialize)]
struct FitEntry {
    model: &'static str,
    c_inf: f64,
    a: f64,
    b: Option<f64>,
    rss: f64,
    aic: f64,
    delta_aic: f64,
    cv_mse: Option<f64>,
}

#[derive(Serialize)]
struct BetaReport {
    skipped: Option<String>,
    fits: Vec<FitEntry>,
    best_model: Option<&'static str>,
}

#[derive(Serialize)]
struct FitReport {
    beta2: BetaReport,
    beta4: BetaReport,
}

fn fit_column(ls: &[f64], cs: &[f64]) -> CliResult<BetaReport> {
    if ls.len() < 5 {
        return Ok(BetaReport {
            skipped: Some(format!("only {} records; need >= 5 for the fits", ls.len())),
            fits: Vec::new(),
            best_model: None,
        });
    }
    let models = [Model::Power, Model::LinearInv, Model::LogInv];
    let mut fits: Vec<ScalingFit> = Vec::new();
    for m in models {
        fits.push(scaling::fit_model(m, ls, cs)?);
    }
    let (best, deltas) = scaling::aic_select(&fits)?;
    let mut entries = Vec::new();
    for (fit, delta) in fits.iter().zip(&deltas) {
        let cv = if ls.len() >= 6 {
            scaling::loo_cv(fit.model, ls, cs).ok()
        } else {
            None
        };
        entries.push(FitEntry {
            model: fit.model.name(),
            c_inf: fit.c_inf,
            a: fit.a,
            b: fit.b,
            rss: fit.rss,
            aic: fit.aic,
            delta_aic: *delta,
            cv_mse: cv,
        });
    }
    Ok(BetaReport {
        skipped: None,
        fits: entries,
        best_model: Some(best.model.name()),
    })
}

fn render_csv(outcome: &SweepOutcome) -> String {
    let mut csv = String::from("L,dP,dP_lo,dP_hi,zetaR,zetaR_lo,zetaR_hi,K,C_beta2,C_beta4\n");
    for r in &outcome.records {
        csv.push_str(&report::csv_row(&[
            format!("{}", r.l),
            format!("{}", r.d_p.value),
            format!("{}", r.d_p.ci_lo),
            format!("{}", r.d_p.ci_hi),
            format!("{}", r.zeta_r.zeta_r),
            format!("{}", r.zeta_r.ci_lo),
            format!("{}", r.zeta_r.ci_hi),
            format!("{}", r.k),
            format!("{}", r.c_beta2),
            format!("{}", r.c_beta4),
        ]));
        csv.push('\n');
    }
    csv
}

fn convergence_plot(outcome: &SweepOutcome, report: &FitReport, timestamp: bool) -> Plot {
    let pts2: Vec<(f64, f64)> = outcome
        .records
        .iter()
        .map(|r| (1.0 / r.l, r.c_beta2))
        .collect();
    let pts4: Vec<(f64, f64)> = outcome
        .records
        .iter()
        .map(|r| (1.0 / r.l, r.c_beta4))
        .collect();
    let mut series = vec![
        Series {
            label: "C(beta=2) data".into(),
            color: "#1f77b4",
            points: pts2,
            marker: true,
            dashed: false,
        },
        Series {
            label: "C(beta=4) data".into(),
            color: "#d62728",
            points: pts4,
            marker: true,
            dashed: false,
        },
    ];
    let mut h_lines = Vec::new();
    for (rep, color, label) in [
        (&report.beta2, "#1f77b4", "beta=2"),
        (&report.beta4, "#d62728", "beta=4"),
    ] {
        if let Some(power) = rep.fits.iter().find(|f| f.model == "power") {
            if let (Some(b), true) = (power.b, !outcome.records.is_empty()) {
                let l_min = outcome.records.first().map(|r| r.l).unwrap_or(100.0);
                let l_max = outcome.records.last().map(|r| r.l).unwrap_or(2000.0);
                let curve: Vec<(f64, f64)> = (0..=120)
                    .map(|i| {
                        let l = l_min * (l_max / l_min).powf(i as f64 / 120.0);
                        (1.0 / l, power.c_inf + power.a * l.powf(-b))
                    })
                    .collect();
                series.push(Series {
                    label: format!("{label} power fit (b={b:.3})"),
                    color,
                    points: curve,
                    marker: false,
                    dashed: true,
                });
            }
            h_lines.push((format!("C_inf {label} = {:.3}", power.c_inf), power.c_inf));
        }
    }
    let top_ticks = [100.0, 200.0, 500.0, 1000.0, 2000.0]
        .iter()
        .map(|&l| (1.0 / l, format!("L={l:.0}")))
        .collect();
    Plot {
        title: "Convergence of the duality measure C(beta, L)".into(),
        x_label: "1 / L".into(),
        y_label: "C(beta, L)".into(),
        series,
        h_lines,
        top_ticks,
        timestamp,
    }
}

pub fn run(cfg: &RunConfig, timestamp: bool) -> CliResult<()> {
    let table = cfg.zero_table()?;
    let params = SweepParams {
        residue_spec: cfg.residue_spec()?,
        sigma: cfg.sigma,
        bootstrap_n: cfg.bootstrap_n,
        seed: cfg.seed,
    };
    let outcome = scale_sweep(&cfg.scales, &table, &params);
    ensure_out_dir(&cfg.output_dir)?;

    let csv_path = report::write_text(&cfg.output_dir, "sweep.csv", &render_csv(&outcome))?;
    if !outcome.skipped.is_empty() {
        let mut log = String::new();
        for (l, reason) in &outcome.skipped {
            log.push_str(&format!("L={l}: {reason}\n"));
        }
        report::write_text(&cfg.output_dir, "sweep_skipped.log", &log)?;
    }

    let ls: Vec<f64> = outcome.records.iter().map(|r| r.l).collect();
    let c2: Vec<f64> = outcome.records.iter().map(|r| r.c_beta2).collect();
    let c4: Vec<f64> = outcome.records.iter().map(|r| r.c_beta4).collect();
    let fit_report = FitReport {
        beta2: fit_column(&ls, &c2)?,
        beta4: fit_column(&ls, &c4)?,
    };
    let json_path = report::write_json(&cfg.output_dir, "fit_report.json", &fit_report)?;

    let plot = convergence_plot(&outcome, &fit_report, timestamp);
    let svg_path = report::write_text(&cfg.output_dir, "convergence.svg", &plot.render())?;

    println!(
        "sweep: {} records ({} skipped) -> {}, {}, {}",
        outcome.records.len(),
        outcome.skipped.len(),
        csv_path.display(),
        json_path.display(),
        svg_path.display()
    );
    if let Some(reason) = &fit_report.beta2.skipped {
        println!("sweep: extrapolation fits skipped: {reason}");
    }
    Ok(())
}
