//! Bootstrap and jackknife error estimation.
//!
//! Randomness discipline: every draw comes from a ChaCha8 generator keyed
//! by the 32-byte little-endian block (seed, trial, draw, TAG). Resample j
//! of trial i owns stream (seed, i, j), so results are bit-identical at
//! any parallelism degree and across platforms. Inputs are sorted before
//! resampling, which makes the whole procedure permutation-invariant.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exec;
use crate::numeric::percentile_sorted;

const STREAM_TAG: u64 = 0x705a_6c61_6221_7631; // "pZlab!v1"

/// The ChaCha8 stream for draw `draw` of trial `trial` under `seed`.
pub fn stream_rng(seed: u64, trial: u64, draw: u64) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[0..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&trial.to_le_bytes());
    key[16..24].copy_from_slice(&draw.to_le_bytes());
    key[24..32].copy_from_slice(&STREAM_TAG.to_le_bytes());
    ChaCha8Rng::from_seed(key)
}

/// Percentile-method bootstrap summary (2.5 / 50 / 97.5).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResampleResult {
    pub median: f64,
    pub ci_lo: f64,
    pub ci_hi: f64,
    pub n_resamples: usize,
    pub seed: u64,
}

/// Bootstrap under the default trial index 0.
pub fn bootstrap<F>(data: &[f64], statistic: F, n: usize, seed: u64) -> Result<ResampleResult>
where
    F: Fn(&[f64]) -> Result<f64> + Sync + Send,
{
    bootstrap_trial(data, statistic, n, seed, 0)
}

/// Bootstrap whose resample j draws from stream (seed, trial, j).
pub fn bootstrap_trial<F>(
    data: &[f64],
    statistic: F,
    n: usize,
    seed: u64,
    trial: u64,
) -> Result<ResampleResult>
where
    F: Fn(&[f64]) -> Result<f64> + Sync + Send,
{
    if data.len() < 2 {
        return Err(Error::Insufficient(format!(
            "bootstrap needs >= 2 observations, got {}",
            data.len()
        )));
    }
    if n < 100 {
        return Err(Error::Parameter(format!("bootstrap needs n >= 100, got {n}")));
    }
    let mut sorted = data.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let len = sorted.len();

    let stats: Vec<Result<f64>> = exec::map_range(n, |j| {
        let mut rng = stream_rng(seed, trial, j as u64);
        let sample: Vec<f64> = (0..len).map(|_| sorted[rng.gen_range(0..len)]).collect();
        statistic(&sample).map_err(|e| Error::Resample {
            index: j,
            source: Box::new(e),
        })
    });
    let mut values = Vec::with_capacity(n);
    for s in stats {
        values.push(s?);
    }
    values.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(ResampleResult {
        median: percentile_sorted(&values, 50.0),
        ci_lo: percentile_sorted(&values, 2.5),
        ci_hi: percentile_sorted(&values, 97.5),
        n_resamples: n,
        seed,
    })
}

/// Leave-one-out jackknife: returns (full-sample estimate, standard error).
pub fn jackknife<F>(data: &[f64], statistic: F) -> Result<(f64, f64)>
where
    F: Fn(&[f64]) -> Result<f64> + Sync + Send,
{
    let n = data.len();
    if n < 3 {
        return Err(Error::Insufficient(format!(
            "jackknife needs >= 3 observations, got {n}"
        )));
    }
    let mut sorted = data.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let full = statistic(&sorted)?;
    let thetas: Vec<Result<f64>> = exec::map_range(n, |i| {
        let mut loo = Vec::with_capacity(n - 1);
        loo.extend_from_slice(&sorted[..i]);
        loo.extend_from_slice(&sorted[i + 1..]);
        statistic(&loo).map_err(|e| Error::Resample {
            index: i,
            source: Box::new(e),
        })
    });
    let mut vals = Vec::with_capacity(n);
    for t in thetas {
        vals.push(t?);
    }
    let mean = vals.iter().sum::<f64>() / n as f64;
    let ss: f64 = vals.iter().map(|v| (v - mean).powi(2)).sum();
    let se = ((n as f64 - 1.0) / n as f64 * ss).sqrt();
    Ok((full, se))
}
