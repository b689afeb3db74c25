//! Box-counting and correlation dimension estimators with log-log fitting
//! and optional dynamic window selection.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::exec;
use crate::numeric::{self, LineFit};
use crate::points::PointSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridKind {
    Geometric,
    Arithmetic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DimMethod {
    Box,
    Correlation,
    Variation,
    Wavelet,
}

/// Log-log least-squares fit plus the (scale, count) window it used.
#[derive(Debug, Clone)]
pub struct LogLogFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
    pub slope_se: f64,
    /// The (epsilon, count) or (scale, value) pairs actually fitted.
    pub window: Vec<(f64, f64)>,
}

/// Quality gate used throughout: only fits with R² above this are
/// "accepted" in the sense of the measurement protocol.
pub const ACCEPT_R2: f64 = 0.99;

#[derive(Debug, Clone, Copy, Default)]
pub struct EstimateFlags {
    /// All counts equal; slope reported as 0.
    pub flat: bool,
    /// Raw slope fell outside [0, 2] and was clamped.
    pub clamped: bool,
}

#[derive(Debug, Clone)]
pub struct DimensionEstimate {
    pub value: f64,
    pub ci_lo: f64,
    pub ci_hi: f64,
    pub method: DimMethod,
    pub diagnostics: LogLogFit,
    pub flags: EstimateFlags,
}

impl DimensionEstimate {
    pub fn accepted(&self) -> bool {
        self.diagnostics.r_squared >= ACCEPT_R2
    }
}

/// Number of half-open boxes [k*eps, (k+1)*eps) anchored at the ambient
/// origin that contain at least one point.
pub fn box_count(points: &PointSet, epsilon: f64) -> Result<usize> {
    if !(epsilon > 0.0) {
        return Err(Error::Parameter(format!("epsilon must be positive, got {epsilon}")));
    }
    if points.is_empty() {
        return Err(Error::EmptyInput("box_count needs a nonempty point set".into()));
    }
    let lo = points.ambient_lo();
    let mut occupied: HashSet<i64> = HashSet::new();
    for &p in points.positions() {
        occupied.insert(((p - lo) / epsilon).floor() as i64);
    }
    Ok(occupied.len())
}

/// Default scale grid: geometric, 12 points, [W/100, W/10].
pub const DEFAULT_EPS_MIN_FRAC: f64 = 0.01;
pub const DEFAULT_EPS_MAX_FRAC: f64 = 0.1;
pub const DEFAULT_N_EPS: usize = 12;

pub fn eps_grid(width: f64, min_frac: f64, max_frac: f64, kind: GridKind, n: usize) -> Vec<f64> {
    let lo = min_frac * width;
    let hi = max_frac * width;
    match kind {
        GridKind::Geometric => {
            let ratio = (hi / lo).powf(1.0 / (n as f64 - 1.0));
            (0..n).map(|i| lo * ratio.powi(i as i32)).collect()
        }
        GridKind::Arithmetic => {
            let step = (hi - lo) / (n as f64 - 1.0);
            (0..n).map(|i| lo + step * i as f64).collect()
        }
    }
}

/// Fit -log N vs log eps, optionally selecting the 4 consecutive scales
/// with the highest window R². Returns the fit in (log eps, log N) space.
fn fit_counts(pairs: &[(f64, f64)], dynamic_window: bool) -> Result<(LineFit, Vec<(f64, f64)>)> {
    if pairs.len() < 4 {
        return Err(Error::Window(format!(
            "need at least 4 usable scales, got {}",
            pairs.len()
        )));
    }
    let lx: Vec<f64> = pairs.iter().map(|&(e, _)| e.ln()).collect();
    let ly: Vec<f64> = pairs.iter().map(|&(_, n)| n.ln()).collect();
    if dynamic_window {
        if pairs.len() < 6 {
            return Err(Error::Window(format!(
                "dynamic selection needs >= 6 candidate scales, got {}",
                pairs.len()
            )));
        }
        let mut best: Option<(f64, LineFit, usize)> = None;
        for i in 0..=(pairs.len() - 4) {
            let f = numeric::ols(&lx[i..i + 4], &ly[i..i + 4])?;
            if best.as_ref().map_or(true, |(r2, _, _)| f.r_squared > *r2) {
                best = Some((f.r_squared, f, i));
            }
        }
        let (_, fit, i0) = best.expect("nonempty candidate set");
        Ok((fit, pairs[i0..i0 + 4].to_vec()))
    } else {
        let fit = numeric::ols(&lx, &ly)?;
        Ok((fit, pairs.to_vec()))
    }
}

fn package_estimate(fit: LineFit, window: Vec<(f64, f64)>, method: DimMethod, sign: f64) -> DimensionEstimate {
    let raw = sign * fit.slope;
    let mut flags = EstimateFlags::default();
    let value = if raw < 0.0 || raw > 2.0 {
        flags.clamped = true;
        raw.clamp(0.0, 2.0)
    } else {
        raw
    };
    let half = 1.96 * fit.slope_se;
    DimensionEstimate {
        value,
        ci_lo: (value - half).max(0.0),
        ci_hi: (value + half).min(2.0),
        method,
        diagnostics: LogLogFit {
            slope: fit.slope,
            intercept: fit.intercept,
            r_squared: fit.r_squared,
            slope_se: fit.slope_se,
            window,
        },
        flags,
    }
}

/// Box-counting dimension over a scale grid spanning
/// [eps_min_frac*W, eps_max_frac*W].
pub fn box_dimension(
    points: &PointSet,
    eps_min_frac: f64,
    eps_max_frac: f64,
    grid: GridKind,
    n_eps: usize,
    dynamic_window: bool,
) -> Result<DimensionEstimate> {
    if !(eps_min_frac > 0.0 && eps_min_frac < eps_max_frac && eps_max_frac < 1.0) {
        return Err(Error::Parameter(format!(
            "need 0 < eps_min_frac < eps_max_frac < 1, got [{eps_min_frac}, {eps_max_frac}]"
        )));
    }
    if n_eps < 4 {
        return Err(Error::Parameter("need n_eps >= 4".into()));
    }
    let eps = eps_grid(points.ambient_width(), eps_min_frac, eps_max_frac, grid, n_eps);
    let counts: Vec<Result<usize>> = exec::map_collect(&eps, |&e| box_count(points, e));
    let mut pairs = Vec::with_capacity(n_eps);
    for (e, c) in eps.iter().zip(counts) {
        pairs.push((*e, c? as f64));
    }
    if pairs.iter().all(|&(_, c)| c == pairs[0].1) {
        // Flat counts carry no scale information; report slope 0 with a flag.
        let window = pairs.clone();
        let mut est = package_estimate(
            LineFit {
                slope: 0.0,
                intercept: pairs[0].1.ln(),
                r_squared: 0.0,
                slope_se: 0.0,
            },
            window,
            DimMethod::Box,
            -1.0,
        );
        est.flags.flat = true;
        return Ok(est);
    }
    let (fit, window) = fit_counts(&pairs, dynamic_window)?;
    Ok(package_estimate(fit, window, DimMethod::Box, -1.0))
}

/// Box dimension with the crate defaults (geometric 12-point grid on
/// [W/100, W/10], full-window fit).
pub fn box_dimension_default(points: &PointSet) -> Result<DimensionEstimate> {
    box_dimension(
        points,
        DEFAULT_EPS_MIN_FRAC,
        DEFAULT_EPS_MAX_FRAC,
        GridKind::Geometric,
        DEFAULT_N_EPS,
        false,
    )
}

/// Correlation dimension: slope of log C(r) vs log r with
/// C(r) = 2/(n(n-1)) * #{i<j : |x_i - x_j| < r}.
pub fn correlation_dimension(
    points: &PointSet,
    r_min: f64,
    r_max: f64,
    n_r: usize,
) -> Result<DimensionEstimate> {
    let pos = points.positions();
    let n = pos.len();
    if n < 50 {
        return Err(Error::Insufficient(format!(
            "correlation dimension needs >= 50 points, got {n}"
        )));
    }
    if !(r_min > 0.0 && r_min < r_max) {
        return Err(Error::Parameter("need 0 < r_min < r_max".into()));
    }
    if pos.last().unwrap() - pos.first().unwrap() == 0.0 {
        return Err(Error::Domain("all points identical".into()));
    }
    if n_r < 4 {
        return Err(Error::Parameter("need n_r >= 4".into()));
    }
    let ratio = (r_max / r_min).powf(1.0 / (n_r as f64 - 1.0));
    let rs: Vec<f64> = (0..n_r).map(|i| r_min * ratio.powi(i as i32)).collect();
    let norm = 2.0 / (n as f64 * (n as f64 - 1.0));
    let pairs_count: Vec<f64> = exec::map_collect(&rs, |&r| {
        // sorted positions: two-pointer count of pairs closer than r
        let mut count = 0usize;
        let mut j = 0usize;
        for i in 0..n {
            if j < i + 1 {
                j = i + 1;
            }
            while j < n && pos[j] - pos[i] < r {
                j += 1;
            }
            count += j - i - 1;
        }
        count as f64 * norm
    });
    let mut pairs = Vec::new();
    for (r, c) in rs.iter().zip(pairs_count) {
        if c > 0.0 {
            pairs.push((*r, c));
        }
    }
    let (fit, window) = fit_counts(&pairs, false)?;
    Ok(package_estimate(fit, window, DimMethod::Correlation, 1.0))
}

/// OLS power-law fit in log space; xs and ys must be positive.
pub fn loglog_fit(xs: &[f64], ys: &[f64]) -> Result<LogLogFit> {
    if xs.len() != ys.len() || xs.len() < 2 {
        return Err(Error::Parameter("loglog_fit needs equal lengths >= 2".into()));
    }
    if xs.iter().chain(ys.iter()).any(|&v| !(v > 0.0)) {
        return Err(Error::Domain("loglog_fit needs strictly positive data".into()));
    }
    let lx: Vec<f64> = xs.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|v| v.ln()).collect();
    let fit = numeric::ols(&lx, &ly)?;
    Ok(LogLogFit {
        slope: fit.slope,
        intercept: fit.intercept,
        r_squared: fit.r_squared,
        slope_se: fit.slope_se,
        window: xs.iter().copied().zip(ys.iter().copied()).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::synth;

    fn pset(v: Vec<f64>, lo: f64, hi: f64) -> PointSet {
        PointSet::new(v, lo, hi).unwrap()
    }

    /// Direct binning oracle, independent of the HashSet implementation.
    fn box_count_oracle(points: &[f64], lo: f64, eps: f64) -> usize {
        let mut ids: Vec<i64> = points.iter().map(|p| ((p - lo) / eps).floor() as i64).collect();
        ids.sort_unstable();
        ids.dedup();
        ids.len()
    }

    #[test]
    fn box_count_examples() {
        let ps = pset(vec![0.1, 0.5, 0.9], 0.0, 1.0);
        assert_eq!(box_count(&ps, 0.5).unwrap(), 2);
        assert_eq!(box_count(&ps, 0.25).unwrap(), 3);
        let single = pset(vec![0.37], 0.0, 1.0);
        for &e in &[0.01, 0.1, 0.5, 2.0] {
            assert_eq!(box_count(&single, e).unwrap(), 1);
        }
    }

    #[test]
    fn box_count_matches_binning_oracle() {
        let ps = synth::cantor_points(6).unwrap();
        for &e in &[0.011, 0.02, 0.037, 0.09] {
            assert_eq!(
                box_count(&ps, e).unwrap(),
                box_count_oracle(ps.positions(), 0.0, e)
            );
        }
    }

    #[test]
    fn box_count_dyadic_refinement() {
        let ps = synth::cantor_points(8).unwrap();
        let mut e = 0.2;
        while e > 0.002 {
            let n1 = box_count(&ps, e).unwrap();
            let n2 = box_count(&ps, e / 2.0).unwrap();
            assert!(n1 <= n2 && n2 <= 2 * n1, "eps={e}: {n1} vs {n2}");
            e /= 2.0;
        }
    }

    #[test]
    fn box_count_scale_equivariance() {
        let base = synth::cantor_points(7).unwrap();
        let c = 37.5;
        let scaled = pset(
            base.positions().iter().map(|p| p * c).collect(),
            0.0,
            c,
        );
        for &e in &[0.01, 0.033, 0.09] {
            assert_eq!(
                box_count(&base, e).unwrap(),
                box_count(&scaled, e * c).unwrap()
            );
        }
    }

    #[test]
    fn cantor_depth8_dimension() {
        let ps = synth::cantor_points(8).unwrap();
        let est = box_dimension_default(&ps).unwrap();
        assert!(
            (est.value - 0.63).abs() <= 0.02,
            "cantor depth 8: {}",
            est.value
        );
        assert!(est.accepted(), "r2 = {}", est.diagnostics.r_squared);
    }

    #[test]
    fn cantor_depth10_converges() {
        let ps = synth::cantor_points(10).unwrap();
        let est = box_dimension_default(&ps).unwrap();
        let truth = 2f64.ln() / 3f64.ln();
        assert!((est.value - truth).abs() <= 0.015, "depth 10: {}", est.value);
    }

    #[test]
    fn uniform_grid_is_one_dimensional() {
        // half-open uniform grid so the last point does not open an extra box
        let ps = pset((0..1024).map(|i| i as f64 / 1024.0).collect(), 0.0, 1.0);
        let est = box_dimension_default(&ps).unwrap();
        assert!((est.value - 1.0).abs() <= 0.02, "uniform: {}", est.value);
    }

    #[test]
    fn duplication_idempotence() {
        // The union of a set with itself is the set.
        let ps = synth::cantor_points(8).unwrap();
        let est1 = box_dimension_default(&ps).unwrap();
        let est2 = box_dimension_default(&ps.clone()).unwrap();
        assert_eq!(est1.value, est2.value);
    }

    #[test]
    fn flat_counts_flagged() {
        let ps = pset(vec![0.5], 0.0, 1.0);
        let est = box_dimension(&ps, 0.01, 0.1, GridKind::Geometric, 12, false).unwrap();
        assert!(est.flags.flat);
        assert_eq!(est.value, 0.0);
    }

    #[test]
    fn dynamic_window_needs_candidates() {
        let ps = synth::cantor_points(8).unwrap();
        assert!(matches!(
            box_dimension(&ps, 0.01, 0.1, GridKind::Geometric, 5, true),
            Err(Error::Window(_))
        ));
        let est = box_dimension(&ps, 0.01, 0.1, GridKind::Geometric, 12, true).unwrap();
        assert_eq!(est.diagnostics.window.len(), 4);
    }

    #[test]
    fn geometric_and_arithmetic_agree_roughly() {
        let ps = synth::cantor_points(9).unwrap();
        let g = box_dimension(&ps, 0.01, 0.1, GridKind::Geometric, 12, false).unwrap();
        let a = box_dimension(&ps, 0.01, 0.1, GridKind::Arithmetic, 12, false).unwrap();
        assert!((g.value - a.value).abs() / g.value < 0.10);
    }

    #[test]
    fn correlation_uniform_is_one() {
        let ps = pset((0..1000).map(|i| i as f64 / 999.0).collect(), 0.0, 1.0);
        let est = correlation_dimension(&ps, 0.01, 0.1, 12).unwrap();
        assert!((est.value - 1.0).abs() <= 0.05, "corr dim: {}", est.value);
    }

    #[test]
    fn correlation_cross_checks_box_on_cantor() {
        let ps = synth::cantor_points(8).unwrap();
        let b = box_dimension_default(&ps).unwrap();
        let c = correlation_dimension(&ps, 0.01, 0.1, 12).unwrap();
        assert!(
            (b.value - c.value).abs() <= 0.04,
            "box {} vs corr {}",
            b.value,
            c.value
        );
    }

    #[test]
    fn correlation_needs_points() {
        let ps = pset(vec![1.0, 2.0], 0.0, 10.0);
        assert!(matches!(
            correlation_dimension(&ps, 0.1, 1.0, 8),
            Err(Error::Insufficient(_))
        ));
    }

    #[test]
    fn loglog_exact_power_laws() {
        let xs: Vec<f64> = (1..=20).map(|i| i as f64).collect();
        let ys: Vec<f64> = xs.iter().map(|x| x * x).collect();
        let f = loglog_fit(&xs, &ys).unwrap();
        assert!((f.slope - 2.0).abs() < 1e-10);
        assert!((f.r_squared - 1.0).abs() < 1e-10);

        let ys: Vec<f64> = xs.iter().map(|x| 3.0 * x.sqrt()).collect();
        let f = loglog_fit(&xs, &ys).unwrap();
        assert!((f.slope - 0.5).abs() < 1e-10);
        assert!((f.intercept - 3f64.ln()).abs() < 1e-10);
    }

    #[test]
    fn loglog_noisy_power_law_within_3_sigma() {
        // Seeded multiplicative noise around y = 2 x^0.7.
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
        let xs: Vec<f64> = (1..=60).map(|i| i as f64).collect();
        let ys: Vec<f64> = xs
            .iter()
            .map(|x| 2.0 * x.powf(0.7) * (1.0 + 0.05 * (rng.gen::<f64>() - 0.5)))
            .collect();
        let f = loglog_fit(&xs, &ys).unwrap();
        assert!((f.slope - 0.7).abs() < 3.0 * f.slope_se.max(1e-3));
    }

    #[test]
    fn loglog_rejects_nonpositive() {
        assert!(loglog_fit(&[1.0, 2.0], &[0.0, 1.0]).is_err());
        assert!(loglog_fit(&[1.0, 1.0], &[1.0, 2.0]).is_err());
    }
}
