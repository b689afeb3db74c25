//! Finite-size scaling fits C(L) = C_inf + a*L^-b plus linear (a/L) and
//! logarithmic (a/ln L) alternatives, AIC model ranking, and
//! leave-one-out cross-validation.

use crate::error::{Error, Result};
use crate::exec;
use crate::numeric::golden_section_min;

pub const B_SEARCH_LO: f64 = 0.05;
pub const B_SEARCH_HI: f64 = 3.0;
/// Ties below this AIC gap resolve toward the fewer-parameter model.
pub const AIC_TIE: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Model {
    Power,
    LinearInv,
    LogInv,
}

impl Model {
    pub fn param_count(self) -> usize {
        match self {
            Model::Power => 3,
            Model::LinearInv | Model::LogInv => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Model::Power => "power",
            Model::LinearInv => "linear_inv",
            Model::LogInv => "log_inv",
        }
    }

    /// The model's regressor at scale L (the term multiplying `a`).
    fn basis(self, l: f64, b: f64) -> f64 {
        match self {
            Model::Power => l.powf(-b),
            Model::LinearInv => 1.0 / l,
            Model::LogInv => 1.0 / l.ln(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct ScalingFit {
    pub model: Model,
    pub c_inf: f64,
    pub a: f64,
    /// Convergence exponent; present only for the power model.
    pub b: Option<f64>,
    pub rss: f64,
    pub aic: f64,
    pub n: usize,
    /// Set when the amplitude is numerically zero (constant data).
    pub degenerate: bool,
}

impl ScalingFit {
    pub fn predict(&self, l: f64) -> f64 {
        self.c_inf + self.a * self.model.basis(l, self.b.unwrap_or(1.0))
    }
}

fn validate_inputs(ls: &[f64], cs: &[f64], min_n: usize) -> Result<()> {
    if ls.len() != cs.len() {
        return Err(Error::Parameter("scales and values length mismatch".into()));
    }
    if ls.len() < min_n {
        return Err(Error::Insufficient(format!(
            "need >= {min_n} points, got {}",
            ls.len()
        )));
    }
    for w in ls.windows(2) {
        if !(w[0] < w[1]) {
            return Err(Error::Parameter("scales must be positive ascending".into()));
        }
    }
    if ls[0] <= 0.0 {
        return Err(Error::Parameter("scales must be positive".into()));
    }
    Ok(())
}

/// Linear least squares for C = c_inf + a * g(L) at fixed basis g.
/// Returns (c_inf, a, rss).
fn linear_subproblem(ls: &[f64], cs: &[f64], model: Model, b: f64) -> (f64, f64, f64) {
    let n = ls.len() as f64;
    let g: Vec<f64> = ls.iter().map(|&l| model.basis(l, b)).collect();
    let sg: f64 = g.iter().sum();
    let sgg: f64 = g.iter().map(|v| v * v).sum();
    let sc: f64 = cs.iter().sum();
    let sgc: f64 = g.iter().zip(cs).map(|(x, y)| x * y).sum();
    let det = n * sgg - sg * sg;
    let (c_inf, a) = if det.abs() < 1e-300 {
        (sc / n, 0.0)
    } else {
        let a = (n * sgc - sg * sc) / det;
        let c = (sc - a * sg) / n;
        (c, a)
    };
    let rss: f64 = ls
        .iter()
        .zip(cs)
        .map(|(&l, &c)| {
            let r = c - c_inf - a * model.basis(l, b);
            r * r
        })
        .sum();
    (c_inf, a, rss)
}

fn aic_value(n: usize, rss: f64, k: usize) -> f64 {
    let nf = n as f64;
    nf * (rss.max(1e-300) / nf).ln() + 2.0 * k as f64
}

/// Least-squares fit of one extrapolation model. The power model is
/// solved by a nested search: a coarse grid over b in [0.05, 3] followed
/// by golden-section refinement, with (c_inf, a) solved exactly at each b.
pub fn fit_model(model: Model, ls: &[f64], cs: &[f64]) -> Result<ScalingFit> {
    validate_inputs(ls, cs, 5)?;
    let n = ls.len();
    let (c_inf, a, b, rss) = match model {
        Model::LinearInv | Model::LogInv => {
            let (c, a, rss) = linear_subproblem(ls, cs, model, 1.0);
            (c, a, None, rss)
        }
        Model::Power => {
            let rss_at = |b: f64| linear_subproblem(ls, cs, Model::Power, b).2;
            // Coarse grid to bracket the global minimum.
            let n_grid = 120;
            let mut best_i = 0;
            let mut best_rss = f64::INFINITY;
            for i in 0..=n_grid {
                let b = B_SEARCH_LO + (B_SEARCH_HI - B_SEARCH_LO) * i as f64 / n_grid as f64;
                let r = rss_at(b);
                if r < best_rss {
                    best_rss = r;
                    best_i = i;
                }
            }
            let grid_step = (B_SEARCH_HI - B_SEARCH_LO) / n_grid as f64;
            let lo = (B_SEARCH_LO + grid_step * (best_i as f64 - 1.0)).max(B_SEARCH_LO);
            let hi = (B_SEARCH_LO + grid_step * (best_i as f64 + 1.0)).min(B_SEARCH_HI);
            let b = golden_section_min(rss_at, lo, hi, 1e-10);
            if !b.is_finite() {
                return Err(Error::Fit(format!(
                    "power fit failed to converge; best grid b ≈ {}",
                    B_SEARCH_LO + grid_step * best_i as f64
                )));
            }
            let (c, a, rss) = linear_subproblem(ls, cs, Model::Power, b);
            (c, a, Some(b), rss)
        }
    };
    let scale: f64 = cs.iter().map(|c| c.abs()).fold(0.0, f64::max).max(1e-12);
    let degenerate = model == Model::Power && a.abs() < 1e-9 * scale;
    Ok(ScalingFit {
        model,
        c_inf,
        a,
        b,
        rss,
        aic: aic_value(n, rss, model.param_count()),
        n,
        degenerate,
    })
}

/// Minimum-AIC fit plus per-fit deltas. Near-ties (ΔAIC < 0.01) resolve
/// toward the fewer-parameter model.
pub fn aic_select(fits: &[ScalingFit]) -> Result<(ScalingFit, Vec<f64>)> {
    if fits.is_empty() {
        return Err(Error::Parameter("aic_select needs at least one fit".into()));
    }
    let n0 = fits[0].n;
    if fits.iter().any(|f| f.n != n0) {
        return Err(Error::Parameter(
            "aic comparison requires fits on identical data".into(),
        ));
    }
    let mut best = 0usize;
    for i in 1..fits.len() {
        let cand = &fits[i];
        let cur = &fits[best];
        if cand.aic < cur.aic - AIC_TIE {
            best = i;
        } else if (cand.aic - cur.aic).abs() <= AIC_TIE
            && cand.model.param_count() < cur.model.param_count()
        {
            best = i;
        }
    }
    let best_aic = fits[best].aic;
    let deltas = if fits.len() == 1 {
        Vec::new()
    } else {
        fits.iter().map(|f| f.aic - best_aic).collect()
    };
    Ok((fits[best].clone(), deltas))
}

/// Leave-one-out cross-validation: mean squared prediction error.
/// Folds whose fit fails are skipped; more than 20% failures is an error.
pub fn loo_cv(model: Model, ls: &[f64], cs: &[f64]) -> Result<f64> {
    validate_inputs(ls, cs, 6)?;
    let n = ls.len();
    let results: Vec<Option<f64>> = exec::map_range(n, |i| {
        let ls_fold: Vec<f64> = (0..n).filter(|&j| j != i).map(|j| ls[j]).collect();
        let cs_fold: Vec<f64> = (0..n).filter(|&j| j != i).map(|j| cs[j]).collect();
        fit_model(model, &ls_fold, &cs_fold)
            .ok()
            .map(|fit| (fit.predict(ls[i]) - cs[i]).powi(2))
    });
    let failures = results.iter().filter(|r| r.is_none()).count();
    if failures * 5 > n {
        return Err(Error::Fit(format!(
            "{failures}/{n} cross-validation folds failed"
        )));
    }
    let errs: Vec<f64> = results.into_iter().flatten().collect();
    Ok(errs.iter().sum::<f64>() / errs.len() as f64)
}
