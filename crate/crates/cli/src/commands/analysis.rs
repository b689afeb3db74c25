//! `pzlab dim | zr | entropy | compress`: the single-quantity analyses.

use clap::Subcommand;
use serde::Serialize;

use pzlab_core::arith;
use pzlab_core::duality;
use pzlab_core::field::Boundary;
use pzlab_core::fractal::{self, GridKind};
use pzlab_core::regularity;
use pzlab_core::synth;
use pzlab_core::zeros::DEFAULT_GRID_DIVISIONS;
use pzlab_core::SampledField;

use crate::config::{ensure_out_dir, RunConfig};
use crate::errors::{input, CliResult};
use crate::report;

#[derive(Serialize)]
struct DimReport {
    limit: u64,
    modulus: u64,
    residues: Vec<u64>,
    n_points: usize,
    box_value: f64,
    box_ci: (f64, f64),
    box_r_squared: f64,
    correlation_value: Option<f64>,
    correlation_r_squared: Option<f64>,
}

pub fn dim(cfg: &RunConfig, limit: u64, dynamic: bool, correlation: bool) -> CliResult<()> {
    let primes = arith::sieve_primes(limit)?;
    let subset = primes.select_residues(&cfg.residue_spec()?)?;
    let est = fractal::box_dimension(
        &subset,
        fractal::DEFAULT_EPS_MIN_FRAC,
        fractal::DEFAULT_EPS_MAX_FRAC,
        GridKind::Geometric,
        fractal::DEFAULT_N_EPS,
        dynamic,
    )?;
    let corr = if correlation {
        let w = subset.ambient_width();
        Some(fractal::correlation_dimension(&subset, 0.01 * w, 0.1 * w, 12)?)
    } else {
        None
    };
    ensure_out_dir(&cfg.output_dir)?;
    let mut points_csv = Vec::new();
    subset.to_csv(&mut points_csv)?;
    report::write_text(
        &cfg.output_dir,
        "points.csv",
        &String::from_utf8(points_csv).expect("csv is utf-8"),
    )?;
    let path = report::write_json(
        &cfg.output_dir,
        "dim.json",
        &DimReport {
            limit,
            modulus: cfg.modulus,
            residues: cfg.residues.clone(),
            n_points: subset.len(),
            box_value: est.value,
            box_ci: (est.ci_lo, est.ci_hi),
            box_r_squared: est.diagnostics.r_squared,
            correlation_value: corr.as_ref().map(|c| c.value),
            correlation_r_squared: corr.as_ref().map(|c| c.diagnostics.r_squared),
        },
    )?;
    println!(
        "dim: d_P = {:.4} (R^2 = {:.4}, {} points) -> {}",
        est.value,
        est.diagnostics.r_squared,
        subset.len(),
        path.display()
    );
    Ok(())
}

#[derive(Serialize)]
struct ZrReport {
    l: f64,
    sigma: f64,
    n_zeros: usize,
    h: f64,
    zeta_r: f64,
    ci: (f64, f64),
    r_squared: f64,
    wavelet_h: f64,
}

pub fn zr(cfg: &RunConfig, l: f64, clamped: bool) -> CliResult<()> {
    let table = cfg.zero_table()?;
    let boundary = if clamped { Boundary::Clamped } else { Boundary::Periodic };
    let field = table.zero_potential(l, cfg.sigma, l / DEFAULT_GRID_DIVISIONS as f64, boundary)?;
    let profile = regularity::variation_profile(
        &field,
        regularity::DEFAULT_S_MIN_FRAC,
        regularity::DEFAULT_S_MAX_FRAC,
        regularity::DEFAULT_N_S,
    )?;
    let est = regularity::holder_estimate(&profile)?;
    let wavelet = regularity::wavelet_holder(&field, 10)?;
    ensure_out_dir(&cfg.output_dir)?;
    let mut profile_csv = String::from("s,F\n");
    for (s, f) in profile.lags.iter().zip(&profile.f_values) {
        profile_csv.push_str(&format!("{s},{f}\n"));
    }
    report::write_text(&cfg.output_dir, "variation_profile.csv", &profile_csv)?;
    let path = report::write_json(
        &cfg.output_dir,
        "zr.json",
        &ZrReport {
            l,
            sigma: cfg.sigma,
            n_zeros: table.zero_count(l),
            h: est.h,
            zeta_r: est.zeta_r,
            ci: (est.ci_lo, est.ci_hi),
            r_squared: est.diagnostics.r_squared,
            wavelet_h: wavelet.h,
        },
    )?;
    println!(
        "zr: zeta_R = {:.4} (H = {:.4}, R^2 = {:.4}) -> {}",
        est.zeta_r,
        est.h,
        est.diagnostics.r_squared,
        path.display()
    );
    Ok(())
}

#[derive(Debug, Subcommand)]
pub enum EntropyCommand {
    /// Differential entropy of unfolded zero spacings.
    Spacings {
        #[arg(long, default_value_t = 2000.0)]
        t_max: f64,
    },
    /// Spectral (PSD) entropy of a sampled field.
    Psd {
        /// Field CSV (x,value); default: a seeded fractional-noise field.
        #[arg(long)]
        csv: Option<std::path::PathBuf>,
        #[arg(long, default_value_t = 0.5)]
        h: f64,
        #[arg(long, default_value_t = 4096)]
        length: usize,
    },
    /// Closed-form vs quadrature semicircle entropy.
    Semicircle,
}

#[derive(Serialize)]
struct SpacingsReport {
    t_max: f64,
    n_spacings: usize,
    n_bins: usize,
    nats: f64,
    degenerate: bool,
    /// Spacings are unfolded by the local mean over this many gaps.
    unfold_window: usize,
}

#[derive(Serialize)]
struct PsdReport {
    source: String,
    length: usize,
    nats: f64,
}

#[derive(Serialize)]
struct SemicircleReport {
    closed_form: f64,
    quadrature: f64,
    abs_diff: f64,
}

pub fn entropy(cfg: &RunConfig, cmd: &EntropyCommand) -> CliResult<()> {
    ensure_out_dir(&cfg.output_dir)?;
    match cmd {
        EntropyCommand::Spacings { t_max } => {
            let table = cfg.zero_table()?;
            let h = duality::spacing_entropy(&table, *t_max)?;
            let path = report::write_json(
                &cfg.output_dir,
                "entropy_spacings.json",
                &SpacingsReport {
                    t_max: *t_max,
                    n_spacings: h.n_spacings,
                    n_bins: h.n_bins,
                    nats: h.nats,
                    degenerate: h.degenerate,
                    unfold_window: duality::UNFOLD_WINDOW,
                },
            )?;
            println!("entropy spacings: {:.4} nats -> {}", h.nats, path.display());
        }
        EntropyCommand::Psd { csv, h, length } => {
            let (field, source) = match csv {
                Some(p) => {
                    let file = std::fs::File::open(p)
                        .map_err(|e| input(format!("field csv {}: {e}", p.display())))?;
                    let f = SampledField::from_csv(std::io::BufReader::new(file), Boundary::Clamped)
                        .map_err(|e| input(format!("field csv {}: {e}", p.display())))?;
                    (f, p.display().to_string())
                }
                None => (
                    synth::fractional_noise(*h, *length, cfg.seed)?,
                    format!("fractional_noise(H={h}, length={length}, seed={})", cfg.seed),
                ),
            };
            let nats = regularity::spectral_entropy_psd(&field)?;
            let path = report::write_json(
                &cfg.output_dir,
                "entropy_psd.json",
                &PsdReport {
                    source,
                    length: field.len(),
                    nats,
                },
            )?;
            println!("entropy psd: {nats:.4} nats -> {}", path.display());
        }
        EntropyCommand::Semicircle => {
            let closed = duality::semicircle_entropy();
            let quad = duality::semicircle_entropy_quadrature();
            let path = report::write_json(
                &cfg.output_dir,
                "entropy_semicircle.json",
                &SemicircleReport {
                    closed_form: closed,
                    quadrature: quad,
                    abs_diff: (closed - quad).abs(),
                },
            )?;
            println!(
                "entropy semicircle: ln(2 pi) - 1/2 = {closed:.6}, quadrature {quad:.6} -> {}",
                path.display()
            );
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct CompressReport {
    n: u64,
    phrases: usize,
    rate_bits_per_symbol: f64,
    exact_bits: f64,
    asymptotic_bits: f64,
}

pub fn compress(cfg: &RunConfig, n: u64) -> CliResult<()> {
    if n < 10 {
        return Err(input("compress needs N >= 10"));
    }
    let primes = arith::sieve_primes(n)?;
    let bits = primes.indicator_sequence(n as usize)?;
    let (phrases, rate) = duality::lz_complexity(&bits)?;
    let (exact_bits, asymptotic_bits) = duality::complexity_estimate(n)?;
    ensure_out_dir(&cfg.output_dir)?;
    let mut indicator = bits.to_ascii();
    indicator.push('\n');
    report::write_text(&cfg.output_dir, "indicator.txt", &indicator)?;
    let path = report::write_json(
        &cfg.output_dir,
        "compress.json",
        &CompressReport {
            n,
            phrases,
            rate_bits_per_symbol: rate,
            exact_bits,
            asymptotic_bits,
        },
    )?;
    println!(
        "compress: {phrases} LZ78 phrases, rate {rate:.4} bits/symbol -> {}",
        path.display()
    );
    Ok(())
}

