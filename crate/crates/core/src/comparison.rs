//! Radial Hessian comparison machinery along geodesics from a point:
//! the Hessian eigenvalue functions lambda_i(r) of the distance function,
//! the Laplacian, the tangential functionals A_s(r), and their positivity.
//!
//! On a symmetric base the Jacobi operator is parallel along radial
//! geodesics, so each lambda_i solves the scalar Riccati equation
//! lambda' = -K_i - lambda^2 with the 1/r pole at the origin, which has
//! the closed form mu coth(mu r), mu = sqrt(-K_i). An adaptive
//! Runge-Kutta integration of the same equation serves as the independent
//! oracle for that formula.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::tol;

/// Curvature-bound data for the comparison argument: K >= -a^2,
/// Ric <= -b^2, base dimension n.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ComparisonParams {
    pub a_squared: f64,
    pub b_squared: f64,
    pub n: usize,
}

impl ComparisonParams {
    pub fn new(a_squared: f64, b_squared: f64, n: usize) -> Result<Self> {
        if a_squared < 0.0 {
            return Err(Error::Config(format!("a^2 = {a_squared} must be >= 0")));
        }
        if b_squared <= 0.0 {
            return Err(Error::Config(format!("b^2 = {b_squared} must be > 0")));
        }
        if n < 4 {
            return Err(Error::DimensionTooSmall(n));
        }
        Ok(Self {
            a_squared,
            b_squared,
            n,
        })
    }

    /// b^2 - 2 a^2, the slack the curvature bounds leave in the radial
    /// derivative estimate.
    pub fn ricci_gap(&self) -> f64 {
        self.b_squared - 2.0 * self.a_squared
    }
}

/// Closed-form radial Hessian eigenvalue: mu coth(mu r) for K < 0 and the
/// flat value 1/r for K = 0 (continuous in K at 0).
pub fn radial_hessian(k: f64, r: f64) -> Result<f64> {
    if r <= 0.0 {
        return Err(Error::NonpositiveRadius(r));
    }
    let k = clamp_curvature(k)?;
    if k == 0.0 {
        return Ok(1.0 / r);
    }
    let mu = (-k).sqrt();
    Ok(mu / (mu * r).tanh())
}

fn clamp_curvature(k: f64) -> Result<f64> {
    if k > tol::CURVATURE {
        return Err(Error::PositiveCurvature(k));
    }
    Ok(k.min(0.0))
}

/// Log-spaced radial grid.
pub fn log_grid(r_min: f64, r_max: f64, points: usize) -> Vec<f64> {
    assert!(r_min > 0.0 && r_max > r_min && points >= 2);
    let (lo, hi) = (r_min.ln(), r_max.ln());
    (0..points)
        .map(|i| (lo + (hi - lo) * i as f64 / (points - 1) as f64).exp())
        .collect()
}

/// The default grid: [1e-3, 100], 2000 points.
pub fn default_grid() -> Vec<f64> {
    log_grid(1e-3, 100.0, 2000)
}

/// Independent oracle: integrate lambda' = -K - lambda^2 from the small-r
/// expansion lambda(r0) = 1/r0 + (-K) r0 / 3 at r0 = 1e-4 with adaptive
/// fourth-order steps, and report lambda at each grid radius.
pub fn riccati_oracle(k: f64, grid: &[f64]) -> Result<Vec<f64>> {
    let k = clamp_curvature(k)?;
    if grid.is_empty() {
        return Ok(Vec::new());
    }
    if grid.windows(2).any(|w| w[1] <= w[0]) || grid[0] <= 0.0 {
        return Err(Error::Config("grid must be strictly increasing and positive".into()));
    }
    let mut r0 = 1e-4_f64;
    if grid[0] <= r0 {
        r0 = grid[0] / 10.0;
    }
    let f = |lambda: f64| -k - lambda * lambda;
    let rk4 = |lambda: f64, h: f64| {
        let k1 = f(lambda);
        let k2 = f(lambda + 0.5 * h * k1);
        let k3 = f(lambda + 0.5 * h * k2);
        let k4 = f(lambda + h * k3);
        lambda + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    };

    let rel_tol = 1e-10;
    let abs_tol = 1e-13;
    let mut r = r0;
    let mut lambda = 1.0 / r0 + (-k) * r0 / 3.0;
    let mut h = r0 * 0.05;
    let mut out = Vec::with_capacity(grid.len());
    for &target in grid {
        while r < target {
            let step = h.min(target - r);
            let full = rk4(lambda, step);
            let half = rk4(rk4(lambda, step * 0.5), step * 0.5);
            let err = (full - half).abs() / 15.0;
            let local_tol = rel_tol * half.abs().max(1.0) + abs_tol;
            if err <= local_tol {
                // accept with local extrapolation
                lambda = half + (half - full) / 15.0;
                r += step;
                let grow = if err == 0.0 {
                    2.0
                } else {
                    0.9 * (local_tol / err).powf(0.2)
                };
                h = (step * grow.clamp(0.2, 2.0)).max(1e-12);
            } else {
                h = step * 0.5;
                if h < 1e-13 {
                    return Err(Error::IntegratorStep(r));
                }
            }
        }
        out.push(lambda);
    }
    Ok(out)
}

/// Radial profile of one geodesic direction: Hessian eigenvalues,
/// Laplacian, and the A_s functionals on a grid.
#[derive(Debug, Clone, Serialize)]
pub struct RadialProfile {
    pub direction: Vec<f64>,
    /// Jacobi eigenvalues K_i <= 0 of the direction
    pub jacobi_eigenvalues: Vec<f64>,
    pub grid: Vec<f64>,
    /// lambda[i][g]: Hessian eigenvalue i at grid point g
    pub lambda: Vec<Vec<f64>>,
    /// Delta r = sum_i lambda_i
    pub laplacian: Vec<f64>,
    /// a_s[s][g] = Delta r - 2 lambda_s
    pub a_s: Vec<Vec<f64>>,
}

impl RadialProfile {
    /// `eigenvalues` are the n-1 radial sectional curvatures of the
    /// direction; the base dimension n = len + 1 must be at least 4.
    pub fn new(direction: Vec<f64>, eigenvalues: &[f64], grid: Vec<f64>) -> Result<Self> {
        let n = eigenvalues.len() + 1;
        if n < 4 {
            return Err(Error::DimensionTooSmall(n));
        }
        let ks: Vec<f64> = eigenvalues
            .iter()
            .map(|&k| clamp_curvature(k))
            .collect::<Result<_>>()?;
        let mut lambda = Vec::with_capacity(ks.len());
        for &k in &ks {
            let row: Vec<f64> = grid
                .iter()
                .map(|&r| radial_hessian(k, r))
                .collect::<Result<_>>()?;
            lambda.push(row);
        }
        let laplacian: Vec<f64> = (0..grid.len())
            .map(|g| lambda.iter().map(|row| row[g]).sum())
            .collect();
        let a_s: Vec<Vec<f64>> = (0..ks.len())
            .map(|s| {
                (0..grid.len())
                    .map(|g| laplacian[g] - 2.0 * lambda[s][g])
                    .collect()
            })
            .collect();
        Ok(Self {
            direction,
            jacobi_eigenvalues: ks,
            grid,
            lambda,
            laplacian,
            a_s,
        })
    }

    pub fn n(&self) -> usize {
        self.jacobi_eigenvalues.len() + 1
    }

    /// min over the grid and all eigen-directions of lambda_i(r) - 1/r:
    /// the comparison-theorem lower bound against the flat model.
    pub fn flat_bound_margin(&self) -> f64 {
        let mut worst = f64::INFINITY;
        for row in &self.lambda {
            for (g, &l) in row.iter().enumerate() {
                worst = worst.min(l - 1.0 / self.grid[g]);
            }
        }
        worst
    }

    /// largest increase lambda(r_{g+1}) - lambda(r_g): monotone decay
    /// means this stays at or below zero.
    pub fn monotonicity_margin(&self) -> f64 {
        let mut worst = f64::NEG_INFINITY;
        for row in &self.lambda {
            for w in row.windows(2) {
                worst = worst.max(w[1] - w[0]);
            }
        }
        worst
    }
}

/// A_s values of one tangential index with the positivity flag and the
/// finite-difference margin of dA_s/dr >= -A_s Delta r.
#[derive(Debug, Clone, Serialize)]
pub struct ASProfile {
    pub s: usize,
    pub values: Vec<f64>,
    pub positive: bool,
    pub min_value: f64,
    /// min over interior grid points of d A_s/dr + A_s Delta r
    pub differential_margin: f64,
}

pub fn a_s_profile(profile: &RadialProfile, s: usize) -> ASProfile {
    let values = profile.a_s[s].clone();
    let min_value = values.iter().cloned().fold(f64::INFINITY, f64::min);
    let mut differential_margin = f64::INFINITY;
    for g in 1..values.len() - 1 {
        let dr = profile.grid[g + 1] - profile.grid[g - 1];
        let derivative = (values[g + 1] - values[g - 1]) / dr;
        differential_margin =
            differential_margin.min(derivative + values[g] * profile.laplacian[g]);
    }
    ASProfile {
        s,
        positive: min_value > 0.0,
        min_value,
        values,
        differential_margin,
    }
}

/// min over the grid of (1/2) sum_s r lambda_s(r) - 1/2, the coefficient of
/// the radial component in the stress-energy pairing; the Hessian
/// comparison bounds it below by (n-2)/2.
pub fn comparison_check(profile: &RadialProfile) -> f64 {
    let mut min_value = f64::INFINITY;
    for (g, &r) in profile.grid.iter().enumerate() {
        let sum: f64 = profile.lambda.iter().map(|row| row[g]).sum();
        min_value = min_value.min(0.5 * r * sum - 0.5);
    }
    min_value
}

/// Curvature-bound data a^2 = |fitted min K|, b^2 = |fitted rho| taken from
/// the surveyed and table-fitted curvature of the base.
pub fn comparison_params_from_fit(
    fit: &crate::geometry::TableFit,
    n: usize,
) -> Result<ComparisonParams> {
    ComparisonParams::new(fit.fitted_min_k.abs(), fit.fitted_ricci.abs(), n)
}
