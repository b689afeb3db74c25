//! `pzlab survey`: the Gamma_0(N) geometric-spectral table with
//! Odd-Positive and dual-bound columns.

use std::path::{Path, PathBuf};

use pzlab_core::modular::{
    canonical_survey_fixture, dual_bound, odd_positive_check, survey_report, SurveyFixtureRow,
};

use crate::config::ensure_out_dir;
use crate::errors::{input, CliResult};
use crate::report;

fn parse_fixture(path: &Path) -> CliResult<Vec<SurveyFixtureRow>> {
    let raw = std::fs::read_to_string(path)
        .map_err(|e| input(format!("fixtures {}: {e}", path.display())))?;
    let mut rows = Vec::new();
    for (i, line) in raw.lines().enumerate() {
        let t = line.trim();
        if t.is_empty() || (i == 0 && t.starts_with("family")) {
            continue;
        }
        let parts: Vec<&str> = t.split(',').map(|s| s.trim()).collect();
        if parts.len() != 4 {
            return Err(input(format!(
                "fixtures {}:{}: expected family,k,N,gamma1",
                path.display(),
                i + 1
            )));
        }
        let k: u32 = parts[1]
            .parse()
            .map_err(|_| input(format!("fixtures line {}: bad weight {:?}", i + 1, parts[1])))?;
        let n: u64 = parts[2]
            .parse()
            .map_err(|_| input(format!("fixtures line {}: bad level {:?}", i + 1, parts[2])))?;
        let gamma1: f64 = parts[3]
            .parse()
            .map_err(|_| input(format!("fixtures line {}: bad gamma1 {:?}", i + 1, parts[3])))?;
        rows.push((parts[0].to_string(), k, n, gamma1));
    }
    Ok(rows)
}

pub fn run(fixtures: Option<&PathBuf>, out_dir: &Path, kappa_ir: f64) -> CliResult<()> {
    let fixture = match fixtures {
        Some(p) => parse_fixture(p)?,
        None => canonical_survey_fixture(),
    };
    let outcome = survey_report(&fixture);
    ensure_out_dir(out_dir)?;

    let mut csv =
        String::from("family,k,N,t_min,ell_min,gamma1,R_f,kappa_geo,bound_ok,margin,product,dual_bound_lower,product_ok\n");
    for row in &outcome.rows {
        let (ok, margin) = odd_positive_check(row, kappa_ir);
        let product = row.ell_min.sqrt() * row.gamma1;
        let db = dual_bound(row.ell_min.sqrt(), kappa_ir)?;
        csv.push_str(&report::csv_row(&[
            row.family.clone(),
            format!("{}", row.weight_k),
            format!("{}", row.level_n),
            format!("{}", row.t_min),
            format!("{:.4}", row.ell_min),
            format!("{}", row.gamma1),
            format!("{:.4}", row.r_f),
            format!("{:.4}", row.kappa_geo),
            format!("{ok}"),
            format!("{margin:.4}"),
            format!("{product:.4}"),
            format!("{:.4}", db.bound),
            format!("{}", product >= db.bound),
        ]));
        csv.push('\n');
    }
    let csv_path = report::write_text(out_dir, "survey.csv", &csv)?;
    if !outcome.failures.is_empty() {
        let mut log = String::new();
        for (family, reason) in &outcome.failures {
            log.push_str(&format!("{family}: {reason}\n"));
        }
        report::write_text(out_dir, "survey_errors.log", &log)?;
    }
    let ell_floor = outcome
        .rows
        .iter()
        .map(|r| r.ell_min)
        .fold(f64::INFINITY, f64::min);
    println!(
        "survey: {} rows ({} failed) -> {}; min ell = {:.4}, kappa_IR = {}",
        outcome.rows.len(),
        outcome.failures.len(),
        csv_path.display(),
        ell_floor,
        kappa_ir
    );
    Ok(())
}
