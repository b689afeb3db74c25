//! Quadratic RG beta functions, trajectory integration, the separable
//! closed form, discrete beta-function estimation, coupling relations,
//! and the 4-parameter modified flow with linear stability analysis.

use crate::error::{Error, Result};
use crate::numeric;

/// Infrared and ultraviolet fixed points of the quadratic flow.
pub const K_IR: f64 = 4.0;
pub const K_UV: f64 = 11.0;

/// beta_K(K) = -alpha (K - 4)(K - 11).
pub fn beta_k(k: f64, alpha: f64) -> f64 {
    -alpha * (k - K_IR) * (k - K_UV)
}

/// Separable solution of dK/dlnL = alpha (K-4)(K-11) with K(1) = K0,
/// written so K decreases toward 4 as L grows:
/// K(L) = (11 + 4 rho L^{7 alpha}) / (1 + rho L^{7 alpha}),
/// rho = (11 - K0)/(K0 - 4).
pub fn closed_form_k(l: f64, k0: f64, alpha: f64) -> f64 {
    if (k0 - K_IR).abs() < 1e-14 || (k0 - K_UV).abs() < 1e-14 {
        return k0;
    }
    let rho = (K_UV - k0) / (k0 - K_IR);
    let x = (7.0 * alpha * l.ln()).exp();
    (K_UV + K_IR * rho * x) / (1.0 + rho * x)
}

/// The closed form as printed in the source material; it does not satisfy
/// its own initial condition at ln L = 0 and is kept only so reports can
/// display the discrepancy against the correct separable solution.
pub fn printed_closed_form_k(l: f64, k0: f64, alpha: f64) -> f64 {
    let e = (7.0 * alpha * l.ln()).exp();
    K_IR + (k0 - K_IR) * (k0 - K_UV) / ((k0 - K_UV) - (k0 - K_IR) * e)
}

// ---------------------------------------------------------------------
// Embedded Dormand-Prince 5(4) integrator with adaptive step control.
// ---------------------------------------------------------------------

const RTOL: f64 = 1e-9;
const ATOL: f64 = 1e-12;

fn dp45_step<F>(f: &F, t: f64, y: &[f64], h: f64) -> (Vec<f64>, f64)
where
    F: Fn(f64, &[f64]) -> Vec<f64>,
{
    const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
    const A: [[f64; 6]; 7] = [
        [0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
        [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
        [
            19372.0 / 6561.0,
            -25360.0 / 2187.0,
            64448.0 / 6561.0,
            -212.0 / 729.0,
            0.0,
            0.0,
        ],
        [
            9017.0 / 3168.0,
            -355.0 / 33.0,
            46732.0 / 5247.0,
            49.0 / 176.0,
            -5103.0 / 18656.0,
            0.0,
        ],
        [
            35.0 / 384.0,
            0.0,
            500.0 / 1113.0,
            125.0 / 192.0,
            -2187.0 / 6784.0,
            11.0 / 84.0,
        ],
    ];
    const B5: [f64; 7] = [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
        0.0,
    ];
    const B4: [f64; 7] = [
        5179.0 / 57600.0,
        0.0,
        7571.0 / 16695.0,
        393.0 / 640.0,
        -92097.0 / 339200.0,
        187.0 / 2100.0,
        1.0 / 40.0,
    ];
    let dim = y.len();
    let mut k: Vec<Vec<f64>> = Vec::with_capacity(7);
    for stage in 0..7 {
        let mut ys = y.to_vec();
        for (j, kj) in k.iter().enumerate() {
            let aij = A[stage][j];
            if aij != 0.0 {
                for d in 0..dim {
                    ys[d] += h * aij * kj[d];
                }
            }
        }
        k.push(f(t + C[stage] * h, &ys));
    }
    let mut y5 = y.to_vec();
    let mut err = 0.0f64;
    for d in 0..dim {
        let mut s5 = 0.0;
        let mut s4 = 0.0;
        for stage in 0..7 {
            s5 += B5[stage] * k[stage][d];
            s4 += B4[stage] * k[stage][d];
        }
        y5[d] += h * s5;
        let scale = ATOL + RTOL * y[d].abs().max(y5[d].abs());
        err = err.max((h * (s5 - s4)).abs() / scale);
    }
    (y5, err)
}

/// Integrate dy/dt = f(t, y) from t0 to t_end (t_end >= t0), returning
/// the state at t_end. Deterministic adaptive stepping.
pub fn integrate_to<F>(f: &F, t0: f64, y0: &[f64], t_end: f64) -> Result<Vec<f64>>
where
    F: Fn(f64, &[f64]) -> Vec<f64>,
{
    let mut t = t0;
    let mut y = y0.to_vec();
    if t_end == t0 {
        return Ok(y);
    }
    let span = t_end - t0;
    let mut h = (span / 100.0).clamp(1e-8, span);
    let mut guard = 0usize;
    while t < t_end {
        if h < 1e-14 * span.max(1.0) {
            return Err(Error::Integration(format!("step underflow at t = {t}")));
        }
        let h_eff = h.min(t_end - t);
        let (y_new, err) = dp45_step(f, t, &y, h_eff);
        if err <= 1.0 {
            t += h_eff;
            y = y_new;
            let grow = if err == 0.0 { 5.0 } else { (0.9 * err.powf(-0.2)).min(5.0) };
            h = h_eff * grow.max(0.2);
        } else {
            h = h_eff * (0.9 * err.powf(-0.2)).max(0.1);
        }
        guard += 1;
        if guard > 10_000_000 {
            return Err(Error::Integration("step budget exhausted".into()));
        }
    }
    Ok(y)
}

/// Numerically integrate dK/dlnL = alpha (K-4)(K-11) from K(1) = K0 and
/// report K at each requested L (ascending), paired with the separable
/// closed form.
#[derive(Debug, Clone)]
pub struct KTrajectoryPoint {
    pub l: f64,
    pub k_ode: f64,
    pub k_closed: f64,
}

pub fn integrate_k_of_l(k0: f64, alpha: f64, l_values: &[f64]) -> Result<Vec<KTrajectoryPoint>> {
    for w in l_values.windows(2) {
        if !(w[0] < w[1]) {
            return Err(Error::Parameter("L values must be ascending".into()));
        }
    }
    if l_values.first().is_some_and(|&l| l < 1.0) {
        return Err(Error::Parameter("L values must be >= 1".into()));
    }
    let rhs = |_t: f64, y: &[f64]| vec![alpha * (y[0] - K_IR) * (y[0] - K_UV)];
    let mut out = Vec::with_capacity(l_values.len());
    let mut t = 0.0;
    let mut y = vec![k0];
    for &l in l_values {
        let u = l.ln();
        y = integrate_to(&rhs, t, &y, u)?;
        t = u;
        out.push(KTrajectoryPoint {
            l,
            k_ode: y[0],
            k_closed: closed_form_k(l, k0, alpha),
        });
    }
    Ok(out)
}

/// Discrete beta function from an ascending (L, K) sweep:
/// beta_hat_i = ΔK/Δln L against the midpoint K, least-squares fitted to
/// -alpha (K-4)(K-11). Returns (alpha_hat, b_hat = 7 alpha_hat).
pub fn discrete_beta(records: &[(f64, f64)]) -> Result<(f64, f64)> {
    if records.len() < 6 {
        return Err(Error::Insufficient(format!(
            "discrete beta needs >= 6 records, got {}",
            records.len()
        )));
    }
    for w in records.windows(2) {
        if !(w[0].0 < w[1].0) {
            return Err(Error::Parameter("record scales must be ascending".into()));
        }
    }
    let mut num = 0.0;
    let mut den = 0.0;
    for w in records.windows(2) {
        let (l0, k0) = w[0];
        let (l1, k1) = w[1];
        let beta_hat = (k1 - k0) / (l1.ln() - l0.ln());
        let k_mid = 0.5 * (k0 + k1);
        // ODE in ln L: dK/dlnL = +alpha (K-4)(K-11) = -beta_K
        let g = (k_mid - K_IR) * (k_mid - K_UV);
        num += beta_hat * g;
        den += g * g;
    }
    if den == 0.0 {
        return Ok((0.0, 0.0));
    }
    let alpha_hat = num / den;
    Ok((alpha_hat, 7.0 * alpha_hat))
}

/// Linearized decay exponent b = sqrt(lambda + g C).
pub fn b_from_couplings(lambda: f64, g: f64, c: f64) -> Result<f64> {
    let radicand = lambda + g * c;
    if radicand < 0.0 {
        return Err(Error::Domain(format!(
            "negative radicand lambda + g*C = {radicand}"
        )));
    }
    Ok(radicand.sqrt())
}

/// alpha = b / (K_UV - K_IR).
pub fn alpha_from_b(b: f64, k_uv: f64, k_ir: f64) -> Result<f64> {
    if !(k_uv > k_ir) {
        return Err(Error::Domain(format!(
            "need K_UV > K_IR, got {k_uv} <= {k_ir}"
        )));
    }
    Ok(b / (k_uv - k_ir))
}

/// Family parameters of the modified 4-parameter flow.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModifiedFlowSpec {
    pub kappa: f64,
    pub mu: f64,
    pub nu: f64,
    pub r: f64,
    pub k_inf: f64,
}

impl ModifiedFlowSpec {
    pub fn new(kappa: f64, mu: f64, nu: f64, r: f64, k_inf: f64) -> Result<Self> {
        if !(mu > 0.0) || !(nu > 0.0) || !(r > 0.0) {
            return Err(Error::Parameter(format!(
                "modified flow needs mu, nu, r > 0 (got mu={mu}, nu={nu}, r={r})"
            )));
        }
        if !kappa.is_finite() || !k_inf.is_finite() {
            return Err(Error::Parameter("kappa and K_inf must be finite".into()));
        }
        Ok(Self {
            kappa,
            mu,
            nu,
            r,
            k_inf,
        })
    }

    /// The Riemann-zeta parameter set quoted with the modified flow.
    pub fn riemann_fit() -> Self {
        Self::new(0.685, 0.003, 0.581, 1.0, 4.0).expect("static parameters valid")
    }

    /// Flow matrix M of dI/dt = M I + b.
    pub fn matrix(&self) -> [[f64; 2]; 2] {
        let Self { kappa, mu, nu, r, .. } = *self;
        [
            [-mu - nu, -kappa - mu + nu * r],
            [kappa - mu + nu * r, -mu - nu * r * r],
        ]
    }

    /// Affine forcing that makes the declared fixed point stationary:
    /// b = -M I*. The printed form K_inf*mu*(1,1) drops the kappa part
    /// (it equals this one plus kappa*K_inf/(1+r) * (1, -r)) and does not
    /// vanish at the declared fixed point; see `printed_forcing`.
    pub fn forcing(&self) -> [f64; 2] {
        let m = self.matrix();
        let (ip, iz) = self.fixed_point();
        [-(m[0][0] * ip + m[0][1] * iz), -(m[1][0] * ip + m[1][1] * iz)]
    }

    /// The forcing as printed alongside the flow equations.
    pub fn printed_forcing(&self) -> [f64; 2] {
        [self.k_inf * self.mu, self.k_inf * self.mu]
    }

    pub fn fixed_point(&self) -> (f64, f64) {
        (
            self.k_inf * self.r / (1.0 + self.r),
            self.k_inf / (1.0 + self.r),
        )
    }
}

#[derive(Debug, Clone, Copy)]
pub struct StabilityReport {
    pub trace: f64,
    pub det: f64,
    pub eigen_real_parts: (f64, f64),
    /// Effective convergence exponent: minus the largest real part.
    pub b_eff: f64,
    pub fixed_point: (f64, f64),
}

/// Eigen-structure of the modified flow. The determinant must satisfy
/// det M = mu nu (r+1)^2 + kappa^2 exactly; a violation beyond 1e-12
/// signals a parameter pathology and is rejected.
pub fn modified_flow_analysis(spec: &ModifiedFlowSpec) -> Result<StabilityReport> {
    let m = spec.matrix();
    let trace = m[0][0] + m[1][1];
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    let det_identity = spec.mu * spec.nu * (spec.r + 1.0).powi(2) + spec.kappa * spec.kappa;
    let scale = det.abs().max(det_identity.abs()).max(1.0);
    if (det - det_identity).abs() > 1e-12 * scale {
        return Err(Error::Integrity(format!(
            "determinant identity violated: {det} vs {det_identity}"
        )));
    }
    let disc = trace * trace - 4.0 * det;
    let eigen_real_parts = if disc >= 0.0 {
        let s = disc.sqrt();
        ((trace + s) / 2.0, (trace - s) / 2.0)
    } else {
        (trace / 2.0, trace / 2.0)
    };
    let max_re = eigen_real_parts.0.max(eigen_real_parts.1);
    Ok(StabilityReport {
        trace,
        det,
        eigen_real_parts,
        b_eff: -max_re,
        fixed_point: spec.fixed_point(),
    })
}

/// Integrate the modified flow dI/dt = M I + b from `i0`, sampling the
/// trajectory on a uniform grid of `n_samples` points up to t_max.
pub fn integrate_modified_flow(
    spec: &ModifiedFlowSpec,
    i0: (f64, f64),
    t_max: f64,
    n_samples: usize,
) -> Result<Vec<(f64, f64, f64)>> {
    if !(t_max > 0.0) {
        return Err(Error::Parameter("t_max must be positive".into()));
    }
    if n_samples < 2 {
        return Err(Error::Parameter("need at least 2 samples".into()));
    }
    let m = spec.matrix();
    let b = spec.forcing();
    let rhs = move |_t: f64, y: &[f64]| {
        vec![
            m[0][0] * y[0] + m[0][1] * y[1] + b[0],
            m[1][0] * y[0] + m[1][1] * y[1] + b[1],
        ]
    };
    let mut out = Vec::with_capacity(n_samples);
    let mut t = 0.0;
    let mut y = vec![i0.0, i0.1];
    out.push((0.0, y[0], y[1]));
    for i in 1..n_samples {
        let target = t_max * i as f64 / (n_samples - 1) as f64;
        y = integrate_to(&rhs, t, &y, target)?;
        t = target;
        out.push((t, y[0], y[1]));
    }
    Ok(out)
}

/// Estimate alpha from a (L, K) trajectory tail: slope of ln(K-4) vs ln L
/// divided by -7.
pub fn tail_exponent(records: &[(f64, f64)]) -> Result<f64> {
    let pts: Vec<(f64, f64)> = records
        .iter()
        .filter(|&&(_, k)| k - K_IR > 1e-12)
        .map(|&(l, k)| (l.ln(), (k - K_IR).ln()))
        .collect();
    if pts.len() < 4 {
        return Err(Error::Insufficient("tail fit needs >= 4 usable records".into()));
    }
    let xs: Vec<f64> = pts.iter().map(|p| p.0).collect();
    let ys: Vec<f64> = pts.iter().map(|p| p.1).collect();
    Ok(numeric::ols(&xs, &ys)?.slope)
}
