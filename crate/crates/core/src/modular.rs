//! Gamma_0(N) minimal hyperbolic traces, geodesic lengths, UV/IR ratio
//! checks, and the dual-bound report.

use crate::error::{Error, Result};
use crate::exec;

/// Default kappa_IR used by the bound checks (the RG-fit value).
pub const KAPPA_IR_DEFAULT: f64 = 0.685;
/// Crossover geometric scale of the dual bound.
pub const CROSSOVER_DELTA_P: f64 = std::f64::consts::FRAC_1_SQRT_2;

/// Smallest hyperbolic trace t >= 3 realized in Gamma_0(N), with a witness
/// matrix [[a, b], [N, t-a]] of determinant one.
///
/// Criterion: t is realized iff some a (mod N) has a(t-a) ≡ 1 (mod N).
/// Termination: a = 1, t = N + 2 always satisfies it, so t_min <= N + 2.
pub fn min_hyperbolic_trace(n: u64) -> (i64, [[i64; 2]; 2]) {
    assert!(n >= 1, "level must be positive");
    for t in 3..=(n as i64 + 2) {
        for a in 0..n as i64 {
            let prod = a * (t - a);
            if (prod - 1).rem_euclid(n as i64) == 0 {
                let b = (prod - 1) / n as i64;
                let witness = [[a, b], [n as i64, t - a]];
                debug_assert_eq!(witness[0][0] * witness[1][1] - witness[0][1] * witness[1][0], 1);
                return (t, witness);
            }
        }
    }
    unreachable!("t = N + 2 always admits a = 1");
}

/// Geodesic length 2 arccosh(t/2) of a hyperbolic class of trace t.
pub fn geodesic_length(t: i64) -> Result<f64> {
    if t < 3 {
        return Err(Error::Domain(format!(
            "trace {t} is not hyperbolic (|t| must exceed 2)"
        )));
    }
    let x = t as f64 / 2.0;
    Ok(2.0 * (x + (x * x - 1.0).sqrt()).ln())
}

/// UV/IR ratio R_f = gamma1 / sqrt(ell_min) and its reciprocal.
pub fn uv_ir_ratio(gamma1: f64, ell_min: f64) -> Result<(f64, f64)> {
    if !(gamma1 > 0.0) || !(ell_min > 0.0) {
        return Err(Error::Domain("gamma1 and ell_min must be positive".into()));
    }
    let r_f = gamma1 / ell_min.sqrt();
    Ok((r_f, 1.0 / r_f))
}

/// One row of the geometric-spectral survey.
#[derive(Debug, Clone, PartialEq)]
pub struct SurveyRow {
    pub family: String,
    pub weight_k: u32,
    pub level_n: u64,
    pub t_min: i64,
    pub ell_min: f64,
    pub gamma1: f64,
    pub r_f: f64,
    pub kappa_geo: f64,
}

impl SurveyRow {
    pub fn compute(family: impl Into<String>, weight_k: u32, level_n: u64, gamma1: f64) -> Result<Self> {
        if level_n == 0 {
            return Err(Error::Parameter("level N must be positive".into()));
        }
        let (t_min, _witness) = min_hyperbolic_trace(level_n);
        let ell_min = geodesic_length(t_min)?;
        let (r_f, kappa_geo) = uv_ir_ratio(gamma1, ell_min)?;
        Ok(SurveyRow {
            family: family.into(),
            weight_k,
            level_n,
            t_min,
            ell_min,
            gamma1,
            r_f,
            kappa_geo,
        })
    }
}

/// Odd-Positive bound check: R_f >= 1/kappa_ir.
pub fn odd_positive_check(row: &SurveyRow, kappa_ir: f64) -> (bool, f64) {
    let bound = 1.0 / kappa_ir;
    let margin = row.r_f - bound;
    (margin >= 0.0, margin)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    Quantum,
    Geometric,
}

#[derive(Debug, Clone, Copy)]
pub struct DualBoundReport {
    pub delta_p: f64,
    pub kappa_ir: f64,
    pub bound: f64,
    pub regime: Regime,
    pub crossover: f64,
}

/// Dual lower bound on Delta_P * Delta_Z:
/// max(1/(2 kappa), Delta_P^2 / kappa); the branches cross at 1/sqrt(2).
pub fn dual_bound(delta_p: f64, kappa_ir: f64) -> Result<DualBoundReport> {
    if !(delta_p > 0.0) || !(kappa_ir > 0.0) {
        return Err(Error::Domain("delta_P and kappa_IR must be positive".into()));
    }
    let quantum = 1.0 / (2.0 * kappa_ir);
    let geometric = delta_p * delta_p / kappa_ir;
    let (bound, regime) = if geometric >= quantum {
        (geometric, Regime::Geometric)
    } else {
        (quantum, Regime::Quantum)
    };
    Ok(DualBoundReport {
        delta_p,
        kappa_ir,
        bound,
        regime,
        crossover: CROSSOVER_DELTA_P,
    })
}

/// Fixture entry: (family, weight k, level N, gamma1).
pub type SurveyFixtureRow = (String, u32, u64, f64);

/// The twelve-family fixture with first-zero ordinates. gamma1 values are
/// external survey data (zeros of the associated L-functions), shipped as
/// a fixture rather than computed.
pub fn canonical_survey_fixture() -> Vec<SurveyFixtureRow> {
    let raw: [(&str, u32, u64, f64); 12] = [
        ("Riemann zeta", 0, 1, 14.135),
        ("chi mod 3", 1, 3, 8.045),
        ("chi mod 4", 1, 4, 6.018),
        ("chi mod 5", 1, 5, 6.644),
        ("chi mod 7", 1, 7, 4.469),
        ("chi mod 8", 1, 8, 4.897),
        ("11a3 (EC)", 2, 11, 5.242),
        ("20a2 (EC)", 2, 20, 5.373),
        ("24a4 (EC)", 2, 24, 5.423),
        ("32a3 (EC)", 2, 32, 5.469),
        ("36a3 (EC)", 2, 36, 5.512),
        ("Delta (k=12)", 12, 1, 9.22),
    ];
    raw.iter()
        .map(|&(f, k, n, g)| (f.to_string(), k, n, g))
        .collect()
}

/// Per-row outcome of a survey run; errors are isolated per row.
#[derive(Debug)]
pub struct SurveyOutcome {
    pub rows: Vec<SurveyRow>,
    pub failures: Vec<(String, String)>,
}

/// Compute survey rows for a fixture, deterministically ordered by
/// (weight, level). Rows that fail validation are reported but do not
/// abort the run.
pub fn survey_report(fixture: &[SurveyFixtureRow]) -> SurveyOutcome {
    let computed: Vec<std::result::Result<SurveyRow, (String, String)>> =
        exec::map_collect(fixture, |(family, k, n, gamma1)| {
            SurveyRow::compute(family.clone(), *k, *n, *gamma1)
                .map_err(|e| (family.clone(), e.to_string()))
        });
    let mut rows = Vec::new();
    let mut failures = Vec::new();
    for c in computed {
        match c {
            Ok(r) => rows.push(r),
            Err(f) => failures.push(f),
        }
    }
    rows.sort_by(|a, b| {
        (a.weight_k, a.level_n, a.family.clone()).cmp(&(b.weight_k, b.level_n, b.family.clone()))
    });
    SurveyOutcome { rows, failures }
}
