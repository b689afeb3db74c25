//! `pzlab validate`: benchmarks against objects with known dimensions.

use pzlab_core::fractal;
use pzlab_core::regularity;
use pzlab_core::synth;

use crate::errors::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum ValidateKind {
    Cantor,
    Weierstrass,
    All,
}

struct Check {
    name: &'static str,
    value: f64,
    lo: f64,
    hi: f64,
}

impl Check {
    fn passed(&self) -> bool {
        self.value >= self.lo && self.value <= self.hi
    }
}

fn cantor_check() -> CliResult<Check> {
    let points = synth::cantor_points(8)?;
    let est = fractal::box_dimension_default(&points)?;
    Ok(Check {
        name: "cantor depth-8 box dimension",
        value: est.value,
        lo: 0.61,
        hi: 0.65,
    })
}

fn weierstrass_check() -> CliResult<Check> {
    let field = synth::weierstrass_field(0.5, 30, 4096)?;
    let est = regularity::holder_default(&field)?;
    Ok(Check {
        name: "weierstrass H=0.5 regularity index",
        value: est.zeta_r,
        lo: 1.43,
        hi: 1.53,
    })
}

pub fn run(kind: ValidateKind) -> CliResult<()> {
    let mut checks = Vec::new();
    if matches!(kind, ValidateKind::Cantor | ValidateKind::All) {
        checks.push(cantor_check()?);
    }
    if matches!(kind, ValidateKind::Weierstrass | ValidateKind::All) {
        checks.push(weierstrass_check()?);
    }
    let mut failures = Vec::new();
    for c in &checks {
        let status = if c.passed() { "PASS" } else { "FAIL" };
        println!(
            "{status} {name}: {value:.4} (band [{lo}, {hi}])",
            name = c.name,
            value = c.value,
            lo = c.lo,
            hi = c.hi
        );
        if !c.passed() {
            failures.push(c.name);
        }
    }
    if failures.is_empty() {
        Ok(())
    } else {
        Err(CliError::Compute(format!(
            "benchmark failures: {}",
            failures.join(", ")
        )))
    }
}
