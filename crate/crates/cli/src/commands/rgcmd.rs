//! `pzlab rg`: trajectory integration, discrete beta-function fits, and
//! the modified-flow stability report.

use std::path::{Path, PathBuf};

use clap::Subcommand;
use serde::Serialize;

use pzlab_core::rg::{self, ModifiedFlowSpec};

use crate::config::ensure_out_dir;
use crate::errors::{input, CliResult};
use crate::report;
use crate::svg::{Plot, Series};

#[derive(Debug, Subcommand)]
pub enum RgCommand {
    /// Integrate dK/dlnL = alpha (K-4)(K-11) and compare the closed form.
    Integrate {
        #[arg(long, default_value_t = 10.8)]
        k0: f64,
        #[arg(long, default_value_t = 1.0 / 14.0)]
        alpha: f64,
        /// Largest scale (geometric grid from L = 1).
        #[arg(long, default_value_t = 1e9)]
        l_max: f64,
        #[arg(long, default_value_t = 200)]
        points: usize,
    },
    /// Fit the discrete beta function of a sweep CSV (columns L,...,K).
    FitBeta {
        /// sweep.csv produced by `pzlab sweep`.
        #[arg(long)]
        sweep_csv: PathBuf,
    },
    /// Stability analysis (and optional trajectory) of the modified flow.
    Modified {
        #[arg(long, default_value_t = 0.685)]
        kappa: f64,
        #[arg(long, default_value_t = 0.003)]
        mu: f64,
        #[arg(long, default_value_t = 0.581)]
        nu: f64,
        #[arg(long, default_value_t = 1.0)]
        r: f64,
        #[arg(long, default_value_t = 4.0)]
        k_inf: f64,
        /// Initial state "IP,IZ"; when set, a trajectory CSV is written.
        #[arg(long, value_delimiter = ',')]
        i0: Option<Vec<f64>>,
        #[arg(long, default_value_t = 100.0)]
        t_max: f64,
        /// Also emit a phase-plane SVG for the trajectory.
        #[arg(long)]
        svg: bool,
    },
}

#[derive(Serialize)]
struct FitBetaReport {
    n_records: usize,
    alpha_hat: f64,
    b_hat: f64,
}

#[derive(Serialize)]
struct StabilityJson {
    kappa: f64,
    mu: f64,
    nu: f64,
    r: f64,
    k_inf: f64,
    trace: f64,
    det: f64,
    eigen_real_parts: (f64, f64),
    b_eff: f64,
    fixed_point: (f64, f64),
}

fn parse_sweep_csv(path: &Path) -> CliResult<Vec<(f64, f64)>> {
    let raw = std::fs::read_to_string(path)
        .map_err(|e| input(format!("sweep csv {}: {e}", path.display())))?;
    let mut header: Option<(usize, usize)> = None;
    let mut records = Vec::new();
    for (i, line) in raw.lines().enumerate() {
        let t = line.trim();
        if t.is_empty() {
            continue;
        }
        let cells: Vec<&str> = t.split(',').collect();
        if i == 0 {
            let l_idx = cells.iter().position(|c| *c == "L");
            let k_idx = cells.iter().position(|c| *c == "K");
            match (l_idx, k_idx) {
                (Some(l), Some(k)) => {
                    header = Some((l, k));
                    continue;
                }
                _ => return Err(input("sweep csv must have L and K columns")),
            }
        }
        let (l_idx, k_idx) = header.ok_or_else(|| input("missing header"))?;
        let l: f64 = cells
            .get(l_idx)
            .and_then(|c| c.parse().ok())
            .ok_or_else(|| input(format!("sweep csv line {}: bad L", i + 1)))?;
        let k: f64 = cells
            .get(k_idx)
            .and_then(|c| c.parse().ok())
            .ok_or_else(|| input(format!("sweep csv line {}: bad K", i + 1)))?;
        records.push((l, k));
    }
    Ok(records)
}

pub fn run(cmd: &RgCommand, out_dir: &Path, timestamp: bool) -> CliResult<()> {
    ensure_out_dir(out_dir)?;
    match cmd {
        RgCommand::Integrate {
            k0,
            alpha,
            l_max,
            points,
        } => {
            if *points < 2 || !(*l_max > 1.0) {
                return Err(input("need points >= 2 and l_max > 1"));
            }
            let ls: Vec<f64> = (0..*points)
                .map(|i| l_max.powf(i as f64 / (*points as f64 - 1.0)))
                .collect();
            let traj = rg::integrate_k_of_l(*k0, *alpha, &ls)?;
            let mut csv = String::from("lnL,K\n");
            for p in &traj {
                csv.push_str(&format!("{},{}\n", p.l.ln(), p.k_ode));
            }
            let path = report::write_text(out_dir, "rg_trajectory.csv", &csv)?;
            let max_gap = traj
                .iter()
                .map(|p| (p.k_ode - p.k_closed).abs())
                .fold(0.0f64, f64::max);
            let final_k = traj.last().map(|p| p.k_ode).unwrap_or(*k0);
            println!(
                "rg integrate: K({l_max:.3e}) = {final_k:.6}; max |ode - closed| = {max_gap:.3e} -> {}",
                path.display()
            );
            Ok(())
        }
        RgCommand::FitBeta { sweep_csv } => {
            let records = parse_sweep_csv(sweep_csv)?;
            let (alpha_hat, b_hat) = rg::discrete_beta(&records)?;
            let path = report::write_json(
                out_dir,
                "rg_fit.json",
                &FitBetaReport {
                    n_records: records.len(),
                    alpha_hat,
                    b_hat,
                },
            )?;
            println!(
                "rg fit-beta: alpha_hat = {alpha_hat:.6}, b_hat = {b_hat:.6} -> {}",
                path.display()
            );
            Ok(())
        }
        RgCommand::Modified {
            kappa,
            mu,
            nu,
            r,
            k_inf,
            i0,
            t_max,
            svg,
        } => {
            let spec = ModifiedFlowSpec::new(*kappa, *mu, *nu, *r, *k_inf)?;
            let rep = rg::modified_flow_analysis(&spec)?;
            let path = report::write_json(
                out_dir,
                "modified_stability.json",
                &StabilityJson {
                    kappa: spec.kappa,
                    mu: spec.mu,
                    nu: spec.nu,
                    r: spec.r,
                    k_inf: spec.k_inf,
                    trace: rep.trace,
                    det: rep.det,
                    eigen_real_parts: rep.eigen_real_parts,
                    b_eff: rep.b_eff,
                    fixed_point: rep.fixed_point,
                },
            )?;
            println!(
                "rg modified: fixed point ({:.6}, {:.6}), det = {:.6}, trace = {:.6}, b_eff = {:.6} -> {}",
                rep.fixed_point.0,
                rep.fixed_point.1,
                rep.det,
                rep.trace,
                rep.b_eff,
                path.display()
            );
            if let Some(start) = i0 {
                if start.len() != 2 {
                    return Err(input("--i0 expects two values, e.g. --i0 3,1"));
                }
                let traj = rg::integrate_modified_flow(&spec, (start[0], start[1]), *t_max, 401)?;
                let mut csv = String::from("t,IP,IZ\n");
                for (t, ip, iz) in &traj {
                    csv.push_str(&format!("{t},{ip},{iz}\n"));
                }
                let tpath = report::write_text(out_dir, "modified_trajectory.csv", &csv)?;
                println!("rg modified: trajectory -> {}", tpath.display());
                if *svg {
                    let plot = Plot {
                        title: "Modified flow phase plane".into(),
                        x_label: "I_P".into(),
                        y_label: "I_Z".into(),
                        series: vec![
                            Series {
                                label: "trajectory".into(),
                                color: "#1f77b4",
                                points: traj.iter().map(|&(_, ip, iz)| (ip, iz)).collect(),
                                marker: false,
                                dashed: false,
                            },
                            Series {
                                label: "fixed point".into(),
                                color: "#d62728",
                                points: vec![rep.fixed_point],
                                marker: true,
                                dashed: false,
                            },
                        ],
                        h_lines: vec![],
                        top_ticks: vec![],
                        timestamp,
                    };
                    let spath = report::write_text(out_dir, "modified_phase.svg", &plot.render())?;
                    println!("rg modified: phase plot -> {}", spath.display());
                }
            }
            Ok(())
        }
    }
}
