//! Stress-energy pairing of a 1-form against the radial field X = r d/dr,
//! its coercivity constant over the radial profiles, and the growth
//! bookkeeping that turns a positive constant into the divergence of the
//! boundary integrals.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::comparison::RadialProfile;
use crate::error::{Error, Result};

/// Pointwise data at radius r in the frame that diagonalizes the Hessian:
/// the n-1 Hessian eigenvalues, the radial component u_r and the
/// tangential components u_t of the form.
#[derive(Debug, Clone, Serialize)]
pub struct StressEnergyFrame {
    pub r: f64,
    pub lambda: Vec<f64>,
    pub u_r: f64,
    pub u_t: Vec<f64>,
}

impl StressEnergyFrame {
    pub fn norm_sq(&self) -> f64 {
        self.u_r * self.u_r + self.u_t.iter().map(|u| u * u).sum::<f64>()
    }

    /// Div X = 1 + r sum_s lambda_s in the diagonal frame.
    pub fn div_x(&self) -> f64 {
        1.0 + self.r * self.lambda.iter().sum::<f64>()
    }
}

/// The pairing <S_omega, nabla X> computed along two routes that must
/// agree identically:
/// direct:  (1/2)|omega|^2 Div X - <omega (.) omega, nabla X>
/// grouped: ((1/2) sum_t r lambda_t - 1/2) u_r^2
///        + sum_s ((1/2) + (1/2) sum_t r lambda_t - r lambda_s) u_s^2
#[derive(Debug, Clone, Copy, Serialize)]
pub struct PairingValues {
    pub direct: f64,
    pub grouped: f64,
    /// magnitude of the terms combined (for scaling the disagreement)
    pub operand_scale: f64,
}

impl PairingValues {
    pub fn difference(&self) -> f64 {
        (self.direct - self.grouped).abs()
    }

    /// Disagreement relative to the size of the combined terms (floored at
    /// 1, so O(1) frames are judged absolutely). Two f64 groupings of the
    /// same expression can only agree to machine epsilon times the operand
    /// magnitude, which this measure certifies.
    pub fn scaled_difference(&self) -> f64 {
        self.difference() / self.operand_scale.max(1.0)
    }
}

pub fn stress_energy_pairing(frame: &StressEnergyFrame) -> PairingValues {
    assert_eq!(frame.lambda.len(), frame.u_t.len(), "frame dimensions");
    let r = frame.r;
    let sum_rl: f64 = frame.lambda.iter().map(|l| r * l).sum();
    let contraction = frame.u_r * frame.u_r
        + frame
            .u_t
            .iter()
            .zip(&frame.lambda)
            .map(|(u, l)| u * u * r * l)
            .sum::<f64>();
    let half_norm_div = 0.5 * frame.norm_sq() * frame.div_x();
    let direct = half_norm_div - contraction;
    let grouped = {
        let radial = (0.5 * sum_rl - 0.5) * frame.u_r * frame.u_r;
        let tangential: f64 = frame
            .u_t
            .iter()
            .zip(&frame.lambda)
            .map(|(u, l)| (0.5 + 0.5 * sum_rl - r * l) * u * u)
            .sum();
        radial + tangential
    };
    PairingValues {
        direct,
        grouped,
        operand_scale: half_norm_div.abs() + contraction.abs(),
    }
}

/// Max dual-route disagreement over `count` random frames drawn from the
/// profile's grid.
pub fn pairing_batch(profile: &RadialProfile, count: usize, rng: &mut ChaCha8Rng) -> f64 {
    let tangential = profile.lambda.len();
    let mut worst = 0.0_f64;
    for _ in 0..count {
        let g = rng.random_range(0..profile.grid.len());
        let frame = StressEnergyFrame {
            r: profile.grid[g],
            lambda: profile.lambda.iter().map(|row| row[g]).collect(),
            u_r: rng.random_range(-1.0..1.0),
            u_t: (0..tangential).map(|_| rng.random_range(-1.0..1.0)).collect(),
        };
        worst = worst.max(stress_energy_pairing(&frame).scaled_difference());
    }
    worst
}

#[derive(Debug, Clone, Serialize)]
pub struct CoercivityData {
    /// min over profiles, grid points, and coefficient families
    pub c0: f64,
    /// min of the radial coefficient (1/2) sum r lambda - 1/2
    pub radial_min: f64,
    /// min of the tangential coefficients (1/2) + (1/2) r A_s
    pub tangential_min: f64,
}

/// The coercivity constant: <S_omega, nabla X> >= C0 |omega|^2 pointwise,
/// with C0 the smallest coefficient either route produces.
pub fn coercivity_constant(profiles: &[RadialProfile]) -> Result<CoercivityData> {
    let mut radial_min = f64::INFINITY;
    let mut tangential_min = f64::INFINITY;
    for profile in profiles {
        for (g, &r) in profile.grid.iter().enumerate() {
            let sum_rl: f64 = profile.lambda.iter().map(|row| r * row[g]).sum();
            radial_min = radial_min.min(0.5 * sum_rl - 0.5);
            for a_row in &profile.a_s {
                tangential_min = tangential_min.min(0.5 + 0.5 * r * a_row[g]);
            }
        }
    }
    let c0 = radial_min.min(tangential_min);
    if c0.partial_cmp(&0.0) != Some(std::cmp::Ordering::Greater) {
        return Err(Error::NonpositiveConstant(c0));
    }
    Ok(CoercivityData {
        c0,
        radial_min,
        tangential_min,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct GrowthEntry {
    pub radius: f64,
    /// 2C ln(R / R0), the lower bound for the volume integral of
    /// |omega|^2 out to radius R
    pub integral_lower_bound: f64,
}

/// The endgame bookkeeping: a coercivity constant C > 0 gives boundary
/// integrals bounded below by 2C/R, whose radial integral diverges
/// logarithmically.
#[derive(Debug, Clone, Serialize)]
pub struct GrowthReport {
    pub c: f64,
    pub r0: f64,
    pub entries: Vec<GrowthEntry>,
    pub integral_diverges: bool,
    /// set when C is too small to support any conclusion
    pub inconclusive: bool,
    pub conclusion: String,
}

pub fn growth_report(c: f64, r0: f64) -> Result<GrowthReport> {
    if c <= 0.0 {
        return Err(Error::NonpositiveConstant(c));
    }
    if r0 <= 0.0 {
        return Err(Error::NonpositiveRadius(r0));
    }
    let inconclusive = c < 1e-12;
    let entries = [10.0, 100.0, 1000.0]
        .iter()
        .map(|&factor| GrowthEntry {
            radius: factor * r0,
            integral_lower_bound: 2.0 * c * factor.ln(),
        })
        .collect();
    let conclusion = if inconclusive {
        "the coercivity constant is numerically zero; no growth conclusion follows".to_string()
    } else {
        format!(
            "boundary integrals of |omega|^2 are bounded below by 2C/R with C = {c:.6}; \
             their radial integral grows like 2C ln(R/R0) without bound, so no nonzero \
             square-integrable harmonic 1-form is consistent with these constants"
        )
    };
    Ok(GrowthReport {
        c,
        r0,
        entries,
        integral_diverges: !inconclusive,
        inconclusive,
        conclusion,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::comparison::{default_grid, log_grid, RadialProfile};
    use rand::SeedableRng;

    fn flat_frame() -> StressEnergyFrame {
        // flat model at r = 2, n = 4: lambda = 1/r
        StressEnergyFrame {
            r: 2.0,
            lambda: vec![0.5, 0.5, 0.5],
            u_r: 1.0,
            u_t: vec![0.0, 0.0, 0.0],
        }
    }

    #[test]
    fn zero_form_pairs_to_zero_both_ways() {
        let mut frame = flat_frame();
        frame.u_r = 0.0;
        let values = stress_energy_pairing(&frame);
        assert_eq!(values.direct, 0.0);
        assert_eq!(values.grouped, 0.0);
    }

    #[test]
    fn flat_radial_form_pairs_to_one() {
        // (1/2 * 3 * 1 - 1/2) * 1 = 1
        let values = stress_energy_pairing(&flat_frame());
        assert!((values.direct - 1.0).abs() < 1e-15);
        assert!((values.grouped - 1.0).abs() < 1e-15);
    }

    #[test]
    fn dual_routes_agree_on_random_frames() {
        let grid = default_grid();
        let profile = RadialProfile::new(vec![], &[-1.0, -1.0, -1.0], grid).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let worst = pairing_batch(&profile, 1000, &mut rng);
        assert!(worst < 1e-12, "dual-route disagreement {worst}");
        // the worked example: r = 1, lambda = coth(1), absolute agreement
        let coth1 = 1.0 / 1.0_f64.tanh();
        let frame = StressEnergyFrame {
            r: 1.0,
            lambda: vec![coth1, coth1, coth1],
            u_r: 0.37,
            u_t: vec![-0.61, 0.88, 0.14],
        };
        assert!(stress_energy_pairing(&frame).difference() < 1e-12);
    }

    #[test]
    fn pairing_scales_quadratically_in_the_form() {
        let mut rng = ChaCha8Rng::seed_from_u64(37);
        for _ in 0..50 {
            let frame = StressEnergyFrame {
                r: rng.random_range(0.01..50.0),
                lambda: (0..5).map(|_| rng.random_range(0.02..3.0)).collect(),
                u_r: rng.random_range(-1.0..1.0),
                u_t: (0..5).map(|_| rng.random_range(-1.0..1.0)).collect(),
            };
            let base = stress_energy_pairing(&frame).direct;
            for t in [2.0_f64, 10.0] {
                let scaled = StressEnergyFrame {
                    r: frame.r,
                    lambda: frame.lambda.clone(),
                    u_r: t * frame.u_r,
                    u_t: frame.u_t.iter().map(|u| t * u).collect(),
                };
                let value = stress_energy_pairing(&scaled).direct;
                assert!((value - t * t * base).abs() < 1e-9 * t * t);
            }
        }
    }

    #[test]
    fn hyperbolic_coercivity_constant_is_one() {
        let grid = default_grid();
        let profile = RadialProfile::new(vec![], &[-1.0, -1.0, -1.0], grid).unwrap();
        let data = coercivity_constant(&[profile]).unwrap();
        assert!(
            (data.c0 - 1.0).abs() < 1e-6,
            "C0 = {} (radial {}, tangential {})",
            data.c0,
            data.radial_min,
            data.tangential_min
        );
    }

    #[test]
    fn flat_profile_coercivity_constant_is_one() {
        let grid = default_grid();
        let profile = RadialProfile::new(vec![], &[0.0, 0.0, 0.0], grid).unwrap();
        let data = coercivity_constant(&[profile]).unwrap();
        assert!((data.c0 - 1.0).abs() < 1e-12);
        assert!((data.radial_min - 1.0).abs() < 1e-12);
        assert!((data.tangential_min - 1.0).abs() < 1e-12);
    }

    #[test]
    fn pinched_profile_clears_the_half_bound() {
        // a quaternionic-hyperbolic-like spectrum in dimension 8
        let grid = default_grid();
        let profile = RadialProfile::new(
            vec![],
            &[-4.0, -4.0, -4.0, -4.0, -1.0, -1.0, -1.0],
            grid,
        )
        .unwrap();
        let data = coercivity_constant(&[profile]).unwrap();
        assert!(data.c0 >= 0.5 - 1e-6, "C0 = {}", data.c0);
    }

    #[test]
    fn coercivity_constant_converges_under_grid_refinement() {
        let coarse = RadialProfile::new(vec![], &[-1.0, -1.0, -1.0], log_grid(1e-3, 100.0, 2000))
            .unwrap();
        let fine = RadialProfile::new(vec![], &[-1.0, -1.0, -1.0], log_grid(1e-3, 100.0, 4000))
            .unwrap();
        let c_coarse = coercivity_constant(&[coarse]).unwrap().c0;
        let c_fine = coercivity_constant(&[fine]).unwrap().c0;
        assert!((c_coarse - c_fine).abs() < 1e-6);
    }

    #[test]
    fn growth_partial_integrals_match_the_logarithms() {
        let report = growth_report(1.0, 1.0).unwrap();
        let expected = [
            2.0 * 10.0_f64.ln(),
            2.0 * 100.0_f64.ln(),
            2.0 * 1000.0_f64.ln(),
        ];
        for (entry, want) in report.entries.iter().zip(expected) {
            assert!((entry.integral_lower_bound - want).abs() < 1e-12);
        }
        assert!(report.integral_diverges);
        assert!(report.conclusion.contains("no nonzero"));
    }

    #[test]
    fn growth_report_rejects_and_degenerates_properly() {
        assert!(growth_report(0.0, 1.0).is_err());
        assert!(growth_report(-1.0, 1.0).is_err());
        assert!(growth_report(1.0, 0.0).is_err());
        let tiny = growth_report(1e-15, 1.0).unwrap();
        assert!(tiny.inconclusive);
        assert!(!tiny.integral_diverges);
    }
}
