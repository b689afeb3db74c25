//! The duality measure K = 1/d_P + 1/zeta_R, the scale sweep over system
//! sizes, the geometric normalization, and the information-density
//! estimators (binomial complexity, LZ78, spacing entropy, semicircle
//! entropy).

use std::collections::HashMap;

use crate::arith;
use crate::error::{Error, Result};
use crate::exec;
use crate::field::Boundary;
use crate::fractal::{self, DimensionEstimate};
use crate::numeric::{self, percentile_sorted};
use crate::points::{BitSequence, PointSet, ResidueSpec};
use crate::regularity::{self, RegularityEstimate};
use crate::resample;
use crate::zeros::{self, ZeroTable};

/// |zeta(1/2)| as the stored literal constant.
pub const ABS_ZETA_HALF: f64 = 1.4603545;

/// K = 1/d_P + 1/zeta_R.
pub fn duality_k(d_p: f64, zeta_r: f64) -> Result<f64> {
    if !(d_p > 0.0) || !(zeta_r > 0.0) {
        return Err(Error::Domain(format!(
            "duality K needs positive inputs, got d_P={d_p}, zeta_R={zeta_r}"
        )));
    }
    Ok(1.0 / d_p + 1.0 / zeta_r)
}

/// Normalized information densities and the product-deviation factor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InfoDensities {
    pub i_p: f64,
    pub i_z: f64,
    pub gamma_norm: f64,
    pub k_norm: f64,
}

/// gamma = 2 / sqrt(I_P I_Z); K_norm = gamma (I_P + I_Z).
pub fn normalize(i_p: f64, i_z: f64) -> Result<InfoDensities> {
    if !(i_p > 0.0) || !(i_z > 0.0) {
        return Err(Error::Domain(format!(
            "normalization needs positive densities, got ({i_p}, {i_z})"
        )));
    }
    let gamma_norm = 2.0 / (i_p * i_z).sqrt();
    Ok(InfoDensities {
        i_p,
        i_z,
        gamma_norm,
        k_norm: gamma_norm * (i_p + i_z),
    })
}

/// First-principles consistency check: d_P = 1/(K - |zeta(1/2)|).
pub fn dp_from_k(k: f64) -> Result<f64> {
    if k <= ABS_ZETA_HALF {
        return Err(Error::Domain(format!(
            "d_P from K needs K > {ABS_ZETA_HALF}, got {k}"
        )));
    }
    Ok(1.0 / (k - ABS_ZETA_HALF))
}

/// (exact, asymptotic) description length in bits of the length-N prime
/// indicator: log2 C(N, pi(N)) against N log2(ln N)/ln N.
pub fn complexity_estimate(n: u64) -> Result<(f64, f64)> {
    if n < 10 {
        return Err(Error::Parameter(format!("need N >= 10, got {n}")));
    }
    let pi_n = arith::sieve_u64(n).len() as u64;
    let exact_bits = numeric::ln_choose(n, pi_n) / std::f64::consts::LN_2;
    let ln_n = (n as f64).ln();
    let asymptotic_bits = n as f64 * ln_n.log2() / ln_n;
    Ok((exact_bits, asymptotic_bits))
}

/// LZ78 phrase count and the induced code rate c(log2 c + 1)/N.
/// A trailing incomplete phrase counts as one phrase.
pub fn lz_complexity(bits: &BitSequence) -> Result<(usize, f64)> {
    let n = bits.len();
    if n < 4 {
        return Err(Error::Insufficient(format!("LZ78 needs length >= 4, got {n}")));
    }
    // trie over (node, symbol) -> node
    let mut next: HashMap<(u32, bool), u32> = HashMap::new();
    let mut n_nodes = 1u32; // root = 0
    let mut phrases = 0usize;
    let mut node = 0u32;
    for &b in bits.bits() {
        match next.get(&(node, b)) {
            Some(&child) => node = child,
            None => {
                next.insert((node, b), n_nodes);
                n_nodes += 1;
                phrases += 1;
                node = 0;
            }
        }
    }
    if node != 0 {
        // dangling prefix already in the dictionary
        phrases += 1;
    }
    let c = phrases as f64;
    Ok((phrases, c * (c.log2() + 1.0) / n as f64))
}

/// Histogram plug-in differential entropy of unfolded spacings.
#[derive(Debug, Clone, Copy)]
pub struct SpacingEntropy {
    pub nats: f64,
    pub degenerate: bool,
    pub n_spacings: usize,
    pub n_bins: usize,
}

/// Sliding window (in spacings) for the local mean used by unfolding.
pub const UNFOLD_WINDOW: usize = 50;

/// Unfold spacings to unit local mean: s_n = gap_n / local_mean(gap).
pub fn unfold_spacings(gammas: &[f64]) -> Vec<f64> {
    let gaps: Vec<f64> = gammas.windows(2).map(|w| w[1] - w[0]).collect();
    let n = gaps.len();
    let half = UNFOLD_WINDOW / 2;
    (0..n)
        .map(|i| {
            let lo = i.saturating_sub(half);
            let hi = (i + half + 1).min(n);
            let mean = gaps[lo..hi].iter().sum::<f64>() / (hi - lo) as f64;
            gaps[i] / mean
        })
        .collect()
}

/// Differential entropy (nats) of spacings via Freedman-Diaconis binning.
pub fn differential_entropy(samples: &[f64]) -> Result<SpacingEntropy> {
    let n = samples.len();
    if n < 100 {
        return Err(Error::Insufficient(format!(
            "entropy estimate needs >= 100 samples, got {n}"
        )));
    }
    let mut sorted = samples.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let iqr = percentile_sorted(&sorted, 75.0) - percentile_sorted(&sorted, 25.0);
    let h = 2.0 * iqr * (n as f64).powf(-1.0 / 3.0);
    let lo = sorted[0];
    let hi = sorted[n - 1];
    if !(h > 0.0) || hi - lo <= 0.0 {
        // delta distribution: entropy diverges to -inf
        return Ok(SpacingEntropy {
            nats: f64::NEG_INFINITY,
            degenerate: true,
            n_spacings: n,
            n_bins: 0,
        });
    }
    let n_bins = (((hi - lo) / h).ceil() as usize).max(1);
    let mut counts = vec![0usize; n_bins];
    for &s in &sorted {
        let mut idx = ((s - lo) / (hi - lo) * n_bins as f64) as usize;
        if idx >= n_bins {
            idx = n_bins - 1;
        }
        counts[idx] += 1;
    }
    let bin_width = (hi - lo) / n_bins as f64;
    let mut nats = 0.0;
    for &c in &counts {
        if c > 0 {
            let p = c as f64 / n as f64;
            nats -= p * (p / bin_width).ln();
        }
    }
    Ok(SpacingEntropy {
        nats,
        degenerate: false,
        n_spacings: n,
        n_bins,
    })
}

/// Differential entropy of the unfolded zero spacings below t_max.
pub fn spacing_entropy(table: &ZeroTable, t_max: f64) -> Result<SpacingEntropy> {
    let count = table.zero_count(t_max);
    if count < 100 {
        return Err(Error::Insufficient(format!(
            "need >= 100 zeros below {t_max}, have {count}"
        )));
    }
    let unfolded = unfold_spacings(&table.gammas()[..count]);
    differential_entropy(&unfolded)
}

/// Closed-form entropy of the Wigner semicircle on [-2, 2]: ln(2 pi) - 1/2.
pub fn semicircle_entropy() -> f64 {
    (2.0 * std::f64::consts::PI).ln() - 0.5
}

/// Quadrature route for the same quantity: -∫ p ln p over [-2, 2] with
/// p(x) = sqrt(4 - x^2)/(2 pi), evaluated after x = 2 sin(theta), which
/// removes the endpoint derivative singularities.
pub fn semicircle_entropy_quadrature() -> f64 {
    let pi = std::f64::consts::PI;
    numeric::integrate(
        |theta| {
            let p = theta.cos() / pi;
            if p <= 0.0 {
                0.0
            } else {
                -p * p.ln() * 2.0 * theta.cos()
            }
        },
        -pi / 2.0,
        pi / 2.0,
        1e-10,
    )
}

// ---------------------------------------------------------------------
// Scale sweep
// ---------------------------------------------------------------------

/// Per-scale record carrying the exact identities K = 1/d_P + 1/zeta_R,
/// C(2) = 2K, C(4) = 4K.
#[derive(Debug, Clone)]
pub struct SweepRecord {
    pub l: f64,
    pub d_p: DimensionEstimate,
    pub zeta_r: RegularityEstimate,
    pub k: f64,
    pub c_beta2: f64,
    pub c_beta4: f64,
}

#[derive(Debug, Clone)]
pub struct SweepOutcome {
    pub records: Vec<SweepRecord>,
    /// (L, reason) for scales that could not be measured.
    pub skipped: Vec<(f64, String)>,
}

/// Sweep configuration beyond the scale list.
#[derive(Debug, Clone)]
pub struct SweepParams {
    pub residue_spec: ResidueSpec,
    pub sigma: f64,
    pub bootstrap_n: usize,
    pub seed: u64,
}

impl Default for SweepParams {
    fn default() -> Self {
        Self {
            residue_spec: ResidueSpec::mod16_default(),
            sigma: 0.8,
            bootstrap_n: 1000,
            seed: 0,
        }
    }
}

const MIN_SUBSET_PRIMES: usize = 30;
const MIN_ZEROS: usize = 10;

fn box_dim_of_multiset(sample: &[f64], l: f64) -> Result<f64> {
    let mut pos = sample.to_vec();
    pos.sort_by(|a, b| a.partial_cmp(b).unwrap());
    pos.dedup();
    let ps = PointSet::new(pos, 0.0, l)?;
    Ok(fractal::box_dimension_default(&ps)?.value)
}

fn zeta_r_of_zero_multiset(sample: &[f64], l: f64, sigma: f64) -> Result<f64> {
    let mut centers = sample.to_vec();
    centers.sort_by(|a, b| a.partial_cmp(b).unwrap());
    // periodic images as in ZeroTable::zero_potential
    let cutoff = zeros::GAUSS_CUTOFF_SIGMAS * sigma;
    let mut with_images = centers.clone();
    for &g in &centers {
        for img in [g - l, g + l] {
            if img > -cutoff && img < l + cutoff {
                with_images.push(img);
            }
        }
    }
    with_images.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let step = l / zeros::DEFAULT_GRID_DIVISIONS as f64;
    let field = zeros::potential_from_centers(&with_images, l, sigma, step, Boundary::Periodic)?;
    Ok(regularity::holder_default(&field)?.zeta_r)
}

/// Measure one scale: full-sample point estimates with bootstrap CIs.
/// Bootstrap streams: d_P uses trial 2i, zeta_R uses trial 2i + 1.
fn measure_scale(
    l: f64,
    trial: u64,
    table: &ZeroTable,
    params: &SweepParams,
) -> Result<SweepRecord> {
    let primes = arith::sieve_primes(l as u64)?;
    let subset = primes.select_residues(&params.residue_spec)?;
    if subset.len() < MIN_SUBSET_PRIMES {
        return Err(Error::Insufficient(format!(
            "{} subset primes < {MIN_SUBSET_PRIMES}",
            subset.len()
        )));
    }
    let n_zeros = table.zero_count(l);
    if n_zeros < MIN_ZEROS {
        return Err(Error::Insufficient(format!(
            "{n_zeros} zeros below L < {MIN_ZEROS}"
        )));
    }

    // full-data fits carry the diagnostics (window, R^2)
    let mut d_p = fractal::box_dimension_default(&subset)?;
    let field = table.zero_potential(
        l,
        params.sigma,
        l / zeros::DEFAULT_GRID_DIVISIONS as f64,
        Boundary::Periodic,
    )?;
    let mut zeta_r = regularity::holder_default(&field)?;

    // report median-over-resamples with the 2.5/97.5 percentile interval
    let dp_boot = resample::bootstrap_trial(
        subset.positions(),
        |sample| box_dim_of_multiset(sample, l),
        params.bootstrap_n,
        params.seed,
        2 * trial,
    )?;
    d_p.value = dp_boot.median;
    d_p.ci_lo = dp_boot.ci_lo;
    d_p.ci_hi = dp_boot.ci_hi;

    let zr_boot = resample::bootstrap_trial(
        &table.gammas()[..n_zeros],
        |sample| zeta_r_of_zero_multiset(sample, l, params.sigma),
        params.bootstrap_n,
        params.seed,
        2 * trial + 1,
    )?;
    zeta_r.zeta_r = zr_boot.median;
    zeta_r.h = 2.0 - zr_boot.median;
    zeta_r.ci_lo = zr_boot.ci_lo;
    zeta_r.ci_hi = zr_boot.ci_hi;

    let k = duality_k(d_p.value, zeta_r.zeta_r)?;
    Ok(SweepRecord {
        l,
        d_p,
        zeta_r,
        k,
        c_beta2: 2.0 * k,
        c_beta4: 4.0 * k,
    })
}

/// Run the scale sweep. Scales that fail a precondition are recorded in
/// `skipped` with the reason; the sweep continues.
pub fn scale_sweep(scales: &[f64], table: &ZeroTable, params: &SweepParams) -> SweepOutcome {
    let results: Vec<(f64, Result<SweepRecord>)> = exec::map_collect(
        &scales.iter().copied().enumerate().collect::<Vec<_>>(),
        |&(i, l)| (l, measure_scale(l, i as u64, table, params)),
    );
    let mut records = Vec::new();
    let mut skipped = Vec::new();
    for (l, r) in results {
        match r {
            Ok(rec) => records.push(rec),
            Err(e) => skipped.push((l, e.to_string())),
        }
    }
    SweepOutcome { records, skipped }
}
