//! Zeta-zero tables (Odlyzko file format), the Gaussian zero potential,
//! and the zero fluctuation field.

use std::io::BufRead;
use std::path::Path;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::exec;
use crate::field::{Boundary, SampledField};

/// Gaussians are truncated at 5 sigma (tail < 4e-6 of the peak).
pub const GAUSS_CUTOFF_SIGMAS: f64 = 5.0;
/// Default potential grid: window / 4096.
pub const DEFAULT_GRID_DIVISIONS: usize = 4096;

/// Ascending imaginary parts of zeta zeros with provenance metadata.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroTable {
    gammas: Vec<f64>,
    source: String,
}

static CANONICAL: OnceLock<ZeroTable> = OnceLock::new();

impl ZeroTable {
    pub fn new(gammas: Vec<f64>, source: impl Into<String>) -> Result<Self> {
        if gammas.is_empty() {
            return Err(Error::EmptyInput("zero table is empty".into()));
        }
        for w in gammas.windows(2) {
            if !(w[0] < w[1]) {
                return Err(Error::Integrity(format!(
                    "zero ordinates not strictly ascending near {}",
                    w[0]
                )));
            }
        }
        if gammas[0] <= 0.0 {
            return Err(Error::Domain("zero ordinates must be positive".into()));
        }
        Ok(Self {
            gammas,
            source: source.into(),
        })
    }

    /// Parse an Odlyzko-format file: one decimal per non-blank line.
    pub fn parse_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let file = std::fs::File::open(path)?;
        let table = Self::parse_reader(std::io::BufReader::new(file))?;
        Ok(Self {
            source: path.display().to_string(),
            ..table
        })
    }

    pub fn parse_reader<R: BufRead>(r: R) -> Result<Self> {
        let mut gammas = Vec::new();
        for (i, line) in r.lines().enumerate() {
            let line = line?;
            let t = line.trim();
            if t.is_empty() {
                continue;
            }
            let v: f64 = t.parse().map_err(|_| Error::Parse {
                line: i + 1,
                message: format!("expected a decimal number, got {t:?}"),
            })?;
            gammas.push(v);
        }
        Self::new(gammas, "<reader>")
    }

    pub fn parse_str(s: &str, source: impl Into<String>) -> Result<Self> {
        let table = Self::parse_reader(s.as_bytes())?;
        Ok(Self {
            source: source.into(),
            ..table
        })
    }

    /// The vendored table of the first 2600 zeros (heights up to ~3060),
    /// which covers every window the desk-scale analyses use.
    pub fn canonical() -> &'static ZeroTable {
        CANONICAL.get_or_init(|| {
            let raw = include_str!("../fixtures/zeros_first_2600.txt");
            let t = Self::parse_str(raw, "vendored: first 2600 zeta zeros")
                .expect("vendored zero fixture is valid");
            debug_assert!((t.gammas[0] - 14.134725).abs() < 1e-4);
            t
        })
    }

    pub fn gammas(&self) -> &[f64] {
        &self.gammas
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn len(&self) -> usize {
        self.gammas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gammas.is_empty()
    }

    /// N(t): number of zeros with ordinate <= t.
    pub fn zero_count(&self, t: f64) -> usize {
        self.gammas.partition_point(|&g| g <= t)
    }

    /// Gaussian zero potential V(x) = Σ_{γ ≤ L} exp(-(x-γ)²/(2σ²)) sampled
    /// on [0, L). Under periodic boundary the images γ ± L that fall within
    /// the cutoff of the window are added.
    pub fn zero_potential(
        &self,
        l: f64,
        sigma: f64,
        step: f64,
        boundary: Boundary,
    ) -> Result<SampledField> {
        if !(sigma > 0.0) {
            return Err(Error::Parameter(format!("sigma must be positive, got {sigma}")));
        }
        if !(step > 0.0) {
            return Err(Error::Parameter(format!("step must be positive, got {step}")));
        }
        let n_zeros = self.zero_count(l);
        if n_zeros == 0 {
            return Err(Error::EmptyInput(format!("no zeros <= {l}: empty support")));
        }
        let centers = potential_centers(&self.gammas[..n_zeros], l, sigma, boundary);
        potential_from_centers(&centers, l, sigma, step, boundary)
    }

    /// Zero fluctuation field
    /// psi(t) = (N(t) - (t/2π) ln(t/2πe)) / (√t ln t) on (2πe, T].
    pub fn zero_fluctuation_field(&self, t_max: f64, step: f64) -> Result<SampledField> {
        let t_lo = 2.0 * std::f64::consts::PI * std::f64::consts::E;
        if !(t_max > t_lo) {
            return Err(Error::Parameter(format!(
                "need T > 2*pi*e ≈ {t_lo:.4}, got {t_max}"
            )));
        }
        if !(step > 0.0) {
            return Err(Error::Parameter("step must be positive".into()));
        }
        let n = ((t_max - t_lo) / step).floor() as usize;
        if n < 8 {
            return Err(Error::Insufficient(
                "fluctuation grid has fewer than 8 samples".into(),
            ));
        }
        let x0 = t_lo + step;
        let values = exec::map_range(n, |i| {
            let t = x0 + i as f64 * step;
            let smooth = t / (2.0 * std::f64::consts::PI) * (t / t_lo).ln();
            (self.zero_count(t) as f64 - smooth) / (t.sqrt() * t.ln())
        });
        SampledField::new(values, x0, step, Boundary::Clamped)
    }
}

/// Effective Gaussian centers: the zeros below L plus, under periodic
/// boundary, their images shifted by ±L that still touch the window.
fn potential_centers(gammas: &[f64], l: f64, sigma: f64, boundary: Boundary) -> Vec<f64> {
    let cutoff = GAUSS_CUTOFF_SIGMAS * sigma;
    let mut centers: Vec<f64> = gammas.to_vec();
    if boundary == Boundary::Periodic {
        for &g in gammas {
            for img in [g - l, g + l] {
                if img > -cutoff && img < l + cutoff {
                    centers.push(img);
                }
            }
        }
    }
    centers.sort_by(|a, b| a.partial_cmp(b).unwrap());
    centers
}

/// Shared kernel: accumulate truncated Gaussians over the grid. Each grid
/// point sums its in-window centers in ascending order, so the result is
/// bit-stable at any parallelism degree. `centers` must be sorted and may
/// contain duplicates (bootstrap resamples use that).
pub(crate) fn potential_from_centers(
    centers: &[f64],
    l: f64,
    sigma: f64,
    step: f64,
    boundary: Boundary,
) -> Result<SampledField> {
    let n = (l / step).round() as usize;
    if n < 8 {
        return Err(Error::Insufficient("potential grid has fewer than 8 samples".into()));
    }
    let cutoff = GAUSS_CUTOFF_SIGMAS * sigma;
    let inv2s2 = 1.0 / (2.0 * sigma * sigma);
    let values = exec::map_range(n, |i| {
        let x = i as f64 * step;
        let lo = centers.partition_point(|&c| c < x - cutoff);
        let hi = centers.partition_point(|&c| c <= x + cutoff);
        let mut acc = 0.0;
        for &c in &centers[lo..hi] {
            let d = x - c;
            acc += (-d * d * inv2s2).exp();
        }
        acc
    });
    SampledField::new(values, 0.0, step, boundary)
}
