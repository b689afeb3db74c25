//! Prime generation, block densities, the logarithmic integral, and the
//! prime fluctuation field.

use crate::error::{Error, Result};
use crate::field::{Boundary, SampledField};
use crate::points::PointSet;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
/// li(2), the offset constant of the logarithmic integral.
pub const LI_2: f64 = 1.045_163_780_117_492_8;

/// All primes <= limit as a `PointSet` on ambient [0, limit].
///
/// Sieves in segments above 10^7 to keep the working set small.
pub fn sieve_primes(limit: u64) -> Result<PointSet> {
    if limit < 2 {
        return Err(Error::EmptyInput(format!("no primes below limit {limit}")));
    }
    let primes = sieve_u64(limit);
    PointSet::new(
        primes.into_iter().map(|p| p as f64).collect(),
        0.0,
        limit as f64,
    )
}

/// Raw sieve used by `sieve_primes` and the complexity estimators.
pub fn sieve_u64(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let root = (limit as f64).sqrt() as u64 + 1;
    let mut base = vec![true; (root + 1) as usize];
    base[0] = false;
    if root >= 1 {
        base[1] = false;
    }
    let mut i = 2u64;
    while i * i <= root {
        if base[i as usize] {
            let mut j = i * i;
            while j <= root {
                base[j as usize] = false;
                j += i;
            }
        }
        i += 1;
    }
    let small: Vec<u64> = (2..=root).filter(|&i| base[i as usize]).collect();

    const SEGMENT: u64 = 1 << 20;
    let mut primes: Vec<u64> = small.iter().copied().filter(|&p| p <= limit).collect();
    let mut lo = root + 1;
    let mut seg = vec![true; SEGMENT as usize];
    while lo <= limit {
        let hi = (lo + SEGMENT - 1).min(limit);
        let len = (hi - lo + 1) as usize;
        seg[..len].fill(true);
        for &p in &small {
            if p * p > hi {
                break;
            }
            let mut start = lo.div_ceil(p) * p;
            if start < p * p {
                start = p * p;
            }
            let mut j = start;
            while j <= hi {
                seg[(j - lo) as usize] = false;
                j += p;
            }
        }
        for k in 0..len {
            if seg[k] {
                primes.push(lo + k as u64);
            }
        }
        lo = hi + 1;
    }
    primes
}

/// Count of members <= x (points assumed sorted, as in `PointSet`).
pub fn count_leq(sorted: &[f64], x: f64) -> usize {
    sorted.partition_point(|&p| p <= x)
}

/// Block-averaged density rows (block_center, rho_I) for blocks
/// (x_I, x_I + B] with x_I = (I-1)B; the trailing partial block is dropped.
///
/// rho_I = count / (B / ln(x_I + B/2)).
pub fn block_density(points: &PointSet, l: f64, b: f64) -> Result<Vec<(f64, f64)>> {
    if !(b > 0.0) {
        return Err(Error::Parameter(format!("block width must be positive, got {b}")));
    }
    // B == L is the single-block boundary case
    if b > l {
        return Err(Error::Parameter(format!("need block width {b} <= window {l}")));
    }
    let n_blocks = (l / b).floor() as usize;
    let pos = points.positions();
    let mut rows = Vec::with_capacity(n_blocks);
    for i in 0..n_blocks {
        let x_i = i as f64 * b;
        let count = count_leq(pos, x_i + b) - count_leq(pos, x_i);
        let center = x_i + 0.5 * b;
        let rho = count as f64 / (b / center.ln());
        rows.push((center, rho));
    }
    Ok(rows)
}

/// Offset logarithmic integral li(x) = li(2) + ∫_2^x dt/ln t for x > 1.
///
/// Evaluated through the series li(x) = γ + ln ln x + Σ_k (ln x)^k/(k·k!),
/// which equals the offset form exactly; relative accuracy well below 1e-9.
pub fn log_integral(x: f64) -> Result<f64> {
    if !(x > 1.0) {
        return Err(Error::Domain(format!("li(x) needs x > 1, got {x}")));
    }
    let lx = x.ln();
    let mut term = 1.0f64;
    let mut sum = 0.0f64;
    for k in 1..=400 {
        term *= lx / k as f64;
        let add = term / k as f64;
        sum += add;
        if add.abs() < 1e-17 * sum.abs().max(1.0) {
            break;
        }
    }
    Ok(EULER_GAMMA + lx.ln() + sum)
}

/// Samples of the normalized prime-counting fluctuation
/// phi(x) = (pi(x) - li(x)) / (sqrt(x)/ln x) on x in [2, limit].
pub fn prime_fluctuation_field(limit: u64, grid_step: f64) -> Result<SampledField> {
    if limit < 3 {
        return Err(Error::Parameter(format!("limit must be >= 3, got {limit}")));
    }
    if !(grid_step > 0.0) {
        return Err(Error::Parameter(format!("grid step must be positive, got {grid_step}")));
    }
    let primes = sieve_u64(limit);
    let n = ((limit as f64 - 2.0) / grid_step).floor() as usize + 1;
    let mut values = Vec::with_capacity(n);
    let mut ptr = 0usize;
    for i in 0..n {
        let x = 2.0 + i as f64 * grid_step;
        while ptr < primes.len() && (primes[ptr] as f64) <= x {
            ptr += 1;
        }
        let pi_x = ptr as f64;
        let li_x = log_integral(x)?;
        values.push((pi_x - li_x) / (x.sqrt() / x.ln()));
    }
    SampledField::new(values, 2.0, grid_step, Boundary::Clamped)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::integrate;
    use crate::points::ResidueSpec;

    fn trial_division_primes(limit: u64) -> Vec<u64> {
        let mut out = Vec::new();
        'outer: for n in 2..=limit {
            let mut d = 2;
            while d * d <= n {
                if n % d == 0 {
                    continue 'outer;
                }
                d += 1;
            }
            out.push(n);
        }
        out
    }

    #[test]
    fn sieve_first_primes() {
        let ps = sieve_primes(10).unwrap();
        assert_eq!(ps.positions(), &[2.0, 3.0, 5.0, 7.0]);
    }

    #[test]
    fn sieve_matches_trial_division_oracle() {
        // 25 primes below 100, 303 below 2000 (counted by the oracle).
        let oracle_100 = trial_division_primes(100);
        let oracle_2000 = trial_division_primes(2000);
        assert_eq!(oracle_100.len(), 25);
        assert_eq!(oracle_2000.len(), 303);
        assert_eq!(
            sieve_primes(100).unwrap().positions().len(),
            oracle_100.len()
        );
        let sieved: Vec<u64> = sieve_u64(2000);
        assert_eq!(sieved, oracle_2000);
    }

    #[test]
    fn sieve_rejects_tiny_limit() {
        assert!(matches!(sieve_primes(1), Err(Error::EmptyInput(_))));
    }

    #[test]
    fn segmented_region_consistent() {
        // Crosses the segment boundary logic with a small segment-free oracle.
        let primes = sieve_u64(30_000);
        let oracle = trial_division_primes(30_000);
        assert_eq!(primes, oracle);
    }

    #[test]
    fn mod16_subset_below_100() {
        let ps = sieve_primes(100).unwrap();
        let sub = ps.select_residues(&ResidueSpec::mod16_default()).unwrap();
        let expect = [5.0, 13.0, 17.0, 29.0, 37.0, 41.0, 53.0, 61.0, 73.0, 89.0, 97.0];
        assert_eq!(sub.positions(), &expect);
    }

    #[test]
    fn mod4_subset_below_20() {
        let ps = sieve_primes(20).unwrap();
        let spec = ResidueSpec::new(4, [1]).unwrap();
        let sub = ps.select_residues(&spec).unwrap();
        assert_eq!(sub.positions(), &[5.0, 13.0, 17.0]);
    }

    #[test]
    fn block_density_hand_count() {
        // pi(50) = 15; block 1 of width 50 on [0,100]: rho = 15/(50/ln 25).
        let ps = sieve_primes(100).unwrap();
        let rows = block_density(&ps, 100.0, 50.0).unwrap();
        assert_eq!(rows.len(), 2);
        let (center, rho) = rows[0];
        assert_eq!(center, 25.0);
        let expect = 15.0 / (50.0 / 25f64.ln());
        assert!((rho - expect).abs() < 1e-12);
        assert!((rho - 0.9657).abs() < 5e-4);
    }

    #[test]
    fn block_density_empty_set_is_zero() {
        let ps = PointSet::new(vec![], 0.0, 100.0).unwrap();
        let rows = block_density(&ps, 100.0, 10.0).unwrap();
        assert!(rows.iter().all(|&(_, rho)| rho == 0.0));
    }

    #[test]
    fn block_density_single_block() {
        let ps = sieve_primes(100).unwrap();
        let rows = block_density(&ps, 100.0, 100.0).unwrap();
        assert_eq!(rows.len(), 1);
    }

    #[test]
    fn block_density_counts_sum() {
        let ps = sieve_primes(500).unwrap();
        let rows = block_density(&ps, 500.0, 37.0).unwrap();
        let n_blocks = rows.len() as f64;
        let covered = 37.0 * n_blocks;
        let total: f64 = rows
            .iter()
            .enumerate()
            .map(|(i, &(c, rho))| {
                // invert rho back to the raw count
                let x_mid = c;
                let _ = i;
                rho * (37.0 / x_mid.ln())
            })
            .sum();
        let expect = count_leq(ps.positions(), covered) - count_leq(ps.positions(), 0.0);
        assert!((total - expect as f64).abs() < 1e-6);
    }

    #[test]
    fn li_matches_quadrature_oracle() {
        // Independent oracle: adaptive Simpson on ∫_2^x dt/ln t plus li(2).
        for &x in &[2.0f64, 5.0, 10.0, 100.0, 1e4] {
            let oracle = if x == 2.0 {
                LI_2
            } else {
                LI_2 + integrate(|t| 1.0 / t.ln(), 2.0, x, 1e-12)
            };
            let got = log_integral(x).unwrap();
            assert!(
                (got - oracle).abs() <= 1e-9 * oracle.abs().max(1.0),
                "li({x}): {got} vs oracle {oracle}"
            );
        }
        assert!((log_integral(2.0).unwrap() - 1.0451638).abs() < 1e-6);
        assert!((log_integral(10.0).unwrap() - 6.1655995).abs() < 1e-6);
    }

    #[test]
    fn li_monotone_and_domain() {
        assert!(log_integral(100.0).unwrap() > log_integral(10.0).unwrap());
        assert!(matches!(log_integral(1.0), Err(Error::Domain(_))));
        assert!(matches!(log_integral(0.5), Err(Error::Domain(_))));
    }

    #[test]
    fn li_derivative_check() {
        let h = 1e-4;
        for &x in &[5.0f64, 50.0, 500.0] {
            let d = (log_integral(x + h).unwrap() - log_integral(x - h).unwrap()) / (2.0 * h);
            assert!((d - 1.0 / x.ln()).abs() < 1e-6, "d li at {x}");
        }
    }

    #[test]
    fn phi_at_two() {
        let field = prime_fluctuation_field(10, 0.5).unwrap();
        // x = 2: pi = 1, li(2) ≈ 1.0452 → phi ≈ -0.0221
        let phi2 = field.values()[0];
        assert!((phi2 - (-0.0221)).abs() < 5e-4, "phi(2) = {phi2}");
    }

    #[test]
    fn phi_with_li_counts_is_zero() {
        // Synthetic check: replacing pi(x) by li(x) zeroes the field.
        for &x in &[3.0f64, 10.0, 123.0] {
            let li = log_integral(x).unwrap();
            let phi = (li - li) / (x.sqrt() / x.ln());
            assert_eq!(phi, 0.0);
        }
    }

    #[test]
    fn phi_bounded_at_desk_scale() {
        let field = prime_fluctuation_field(1000, 1.0).unwrap();
        assert!(field.values().iter().all(|v| v.abs() < 3.0));
    }
}
