//! Synthetic generators with known ground truth, used to calibrate and
//! validate the estimators: Cantor midpoints, Weierstrass fields,
//! spectral-synthesis fractional noise, and power-law sweep data.

use rand::Rng;
use rand_distr::{Distribution, Normal, StandardNormal};
use rustfft::{num_complex::Complex, FftPlanner};

use crate::error::{Error, Result};
use crate::field::{Boundary, SampledField};
use crate::points::PointSet;
use crate::resample::stream_rng;

/// Stream tags keeping the synthetic draws disjoint from bootstrap draws.
const FNOISE_STREAM: u64 = 0x464e4f49; // "FNOI"
const SWEEP_STREAM: u64 = 0x50535750; // "PSWP"

/// Generator parameter sets, one per synthetic family.
#[derive(Debug, Clone, PartialEq)]
pub enum SyntheticSpec {
    Cantor { depth: u32 },
    Weierstrass { h: f64, n_terms: usize, length: usize },
    FractionalNoise { h: f64, length: usize, seed: u64 },
    PowerSweep {
        c_inf: f64,
        a: f64,
        b: f64,
        scales: Vec<f64>,
        noise_sd: f64,
        seed: u64,
    },
}

impl SyntheticSpec {
    /// Check the parameters against the documented ranges without
    /// generating anything.
    pub fn validate(&self) -> Result<()> {
        match self {
            SyntheticSpec::Cantor { depth } => {
                if !(1..=16).contains(depth) {
                    return Err(Error::Parameter(format!(
                        "cantor depth must be in 1..=16, got {depth}"
                    )));
                }
            }
            SyntheticSpec::Weierstrass { h, n_terms, length } => {
                if !(*h > 0.0 && *h < 1.0) || *n_terms < 20 || *length < 1024 {
                    return Err(Error::Parameter(
                        "weierstrass needs H in (0,1), n_terms >= 20, length >= 1024".into(),
                    ));
                }
            }
            SyntheticSpec::FractionalNoise { h, length, .. } => {
                if !(*h > 0.0 && *h < 1.0) || *length < 256 || !length.is_power_of_two() {
                    return Err(Error::Parameter(
                        "fractional noise needs H in (0,1) and power-of-two length >= 256".into(),
                    ));
                }
            }
            SyntheticSpec::PowerSweep { b, scales, noise_sd, .. } => {
                if !(*b > 0.0) || *noise_sd < 0.0 {
                    return Err(Error::Parameter("power sweep needs b > 0, noise_sd >= 0".into()));
                }
                for w in scales.windows(2) {
                    if !(w[0] < w[1]) {
                        return Err(Error::Parameter("power sweep scales must be ascending".into()));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Midpoints of the 2^depth surviving intervals of the middle-thirds
/// construction on [0, 1].
pub fn cantor_points(depth: u32) -> Result<PointSet> {
    if !(1..=16).contains(&depth) {
        return Err(Error::Parameter(format!("cantor depth must be in 1..=16, got {depth}")));
    }
    let mut intervals = vec![(0.0f64, 1.0f64)];
    for _ in 0..depth {
        let mut next = Vec::with_capacity(intervals.len() * 2);
        for (a, b) in intervals {
            let w = (b - a) / 3.0;
            next.push((a, a + w));
            next.push((b - w, b));
        }
        intervals = next;
    }
    let mids: Vec<f64> = intervals.iter().map(|(a, b)| 0.5 * (a + b)).collect();
    PointSet::new(mids, 0.0, 1.0)
}

/// W(x) = Σ_{k<n} 2^{-kH} cos(2^k π x) sampled uniformly on [0, 2).
pub fn weierstrass_field(h: f64, n_terms: usize, length: usize) -> Result<SampledField> {
    if !(h > 0.0 && h < 1.0) {
        return Err(Error::Parameter(format!("H must be in (0,1), got {h}")));
    }
    if n_terms < 20 {
        return Err(Error::Parameter("need n_terms >= 20".into()));
    }
    if length < 1024 {
        return Err(Error::Parameter("need length >= 1024".into()));
    }
    let step = 2.0 / length as f64;
    let mut values = vec![0.0f64; length];
    for k in 0..n_terms {
        let freq = 2f64.powi(k as i32) * std::f64::consts::PI;
        let amp = 2f64.powf(-(k as f64) * h);
        for (i, v) in values.iter_mut().enumerate() {
            *v += amp * (freq * (i as f64 * step)).cos();
        }
    }
    SampledField::new(values, 0.0, step, Boundary::Clamped)
}

/// Spectral-synthesis noise with power spectrum |ω|^-(2H+1), deterministic
/// per seed.
pub fn fractional_noise(h: f64, length: usize, seed: u64) -> Result<SampledField> {
    if !(h > 0.0 && h < 1.0) {
        return Err(Error::Parameter(format!("H must be in (0,1), got {h}")));
    }
    if length < 256 || !length.is_power_of_two() {
        return Err(Error::Parameter(format!(
            "length must be a power of two >= 256, got {length}"
        )));
    }
    let mut rng = stream_rng(seed, FNOISE_STREAM, 0);
    let mut spectrum = vec![Complex::new(0.0, 0.0); length];
    let half = length / 2;
    for k in 1..half {
        let amp = (k as f64).powf(-(2.0 * h + 1.0) / 2.0);
        let re: f64 = StandardNormal.sample(&mut rng);
        let im: f64 = StandardNormal.sample(&mut rng);
        spectrum[k] = Complex::new(amp * re, amp * im);
        spectrum[length - k] = spectrum[k].conj();
    }
    let nyq: f64 = StandardNormal.sample(&mut rng);
    spectrum[half] = Complex::new((half as f64).powf(-(2.0 * h + 1.0) / 2.0) * nyq, 0.0);
    let mut planner = FftPlanner::new();
    let ifft = planner.plan_fft_inverse(length);
    ifft.process(&mut spectrum);
    let values: Vec<f64> = spectrum.iter().map(|c| c.re).collect();
    SampledField::new(values, 0.0, 1.0, Boundary::Clamped)
}

/// C_i = c_inf + a * L_i^-b + N(0, noise_sd), seeded per index.
pub fn power_sweep(
    c_inf: f64,
    a: f64,
    b: f64,
    scales: &[f64],
    noise_sd: f64,
    seed: u64,
) -> Result<(Vec<f64>, Vec<f64>)> {
    if !(b > 0.0) {
        return Err(Error::Parameter(format!("exponent b must be positive, got {b}")));
    }
    if noise_sd < 0.0 {
        return Err(Error::Parameter("noise_sd must be nonnegative".into()));
    }
    for w in scales.windows(2) {
        if !(w[0] < w[1]) {
            return Err(Error::Parameter("scales must be ascending".into()));
        }
    }
    let normal = if noise_sd > 0.0 {
        Some(Normal::new(0.0, noise_sd).map_err(|e| Error::Parameter(e.to_string()))?)
    } else {
        None
    };
    let mut cs = Vec::with_capacity(scales.len());
    for (i, &l) in scales.iter().enumerate() {
        let mut c = c_inf + a * l.powf(-b);
        if let Some(n) = &normal {
            let mut rng = stream_rng(seed, SWEEP_STREAM, i as u64);
            c += n.sample(&mut rng);
        }
        cs.push(c);
    }
    Ok((scales.to_vec(), cs))
}

/// The 40 system scales used for the dense sweep.
pub fn paper_scales() -> Vec<f64> {
    vec![
        100.0, 115.0, 125.0, 140.0, 150.0, 165.0, 175.0, 190.0, 200.0, 225.0, 250.0, 275.0,
        300.0, 325.0, 350.0, 375.0, 400.0, 450.0, 475.0, 500.0, 550.0, 600.0, 650.0, 700.0,
        750.0, 800.0, 850.0, 900.0, 950.0, 1000.0, 1100.0, 1200.0, 1300.0, 1400.0, 1500.0,
        1600.0, 1700.0, 1800.0, 1900.0, 2000.0,
    ]
}

// Convenience used by tests and the CLI: a noise field driven by an
// arbitrary RNG (not part of the calibrated generators).
pub fn white_noise_field(length: usize, seed: u64) -> Result<SampledField> {
    let mut rng = stream_rng(seed, FNOISE_STREAM, 1);
    let values: Vec<f64> = (0..length).map(|_| rng.gen::<f64>() - 0.5).collect();
    SampledField::new(values, 0.0, 1.0, Boundary::Clamped)
}
