//! Property tests for the invariants that hold for *every* input,
//! not just the worked examples.

use std::sync::OnceLock;

use proptest::prelude::*;

use pdgeom::algebra::{build_full, AlgebraData, AlgebraSpec};
use pdgeom::coercivity::{growth_report, stress_energy_pairing, StressEnergyFrame};
use pdgeom::comparison::radial_hessian;
use pdgeom::harmonic::{constraint_map, horizontality_residual, FormCoefficients};

fn so14() -> &'static AlgebraData {
    static DATA: OnceLock<AlgebraData> = OnceLock::new();
    DATA.get_or_init(|| build_full(&AlgebraSpec::so(1, 2), None).expect("so(1,4)"))
}

fn sp11() -> &'static AlgebraData {
    static DATA: OnceLock<AlgebraData> = OnceLock::new();
    DATA.get_or_init(|| build_full(&AlgebraSpec::sp(1, 1), None).expect("sp(1,1)"))
}

proptest! {
    #[test]
    fn hessian_dominates_the_flat_model(k in -10.0_f64..0.0, r in 1e-3_f64..100.0) {
        let lambda = radial_hessian(k, r).unwrap();
        prop_assert!(r * lambda >= 1.0 - 1e-12);
    }

    #[test]
    fn hessian_decreases_in_r(k in -10.0_f64..0.0, r in 1e-3_f64..50.0, step in 1e-3_f64..10.0) {
        let near = radial_hessian(k, r).unwrap();
        let far = radial_hessian(k, r + step).unwrap();
        prop_assert!(far <= near + 1e-14);
    }

    #[test]
    fn hessian_grows_with_curvature_magnitude(
        k in -10.0_f64..0.0,
        extra in 0.0_f64..5.0,
        r in 1e-3_f64..100.0,
    ) {
        let weaker = radial_hessian(k, r).unwrap();
        let stronger = radial_hessian(k - extra, r).unwrap();
        prop_assert!(stronger >= weaker - 1e-14);
    }

    #[test]
    fn horizontality_vanishes_for_every_form(
        u in prop::collection::vec(-1.0_f64..1.0, 4),
        fiber in prop::collection::vec(-1.0_f64..1.0, 4),
    ) {
        let data = so14();
        let form = FormCoefficients { horizontal: u, fiber };
        for s in data.cb.fiber_range() {
            prop_assert!(horizontality_residual(&data.st, &form, s) < 1e-12);
        }
    }

    #[test]
    fn constraint_map_is_superposable(
        u in prop::collection::vec(-1.0_f64..1.0, 8),
        v in prop::collection::vec(-1.0_f64..1.0, 8),
        alpha in -2.0_f64..2.0,
        beta in -2.0_f64..2.0,
    ) {
        let data = sp11();
        let combo: Vec<f64> = u.iter().zip(&v).map(|(a, b)| alpha * a + beta * b).collect();
        let lhs = constraint_map(&data.st, &combo);
        let lu = constraint_map(&data.st, &u);
        let lv = constraint_map(&data.st, &v);
        for ((l, a), b) in lhs.iter().zip(&lu).zip(&lv) {
            prop_assert!((l - (alpha * a + beta * b)).abs() < 1e-12);
        }
    }

    #[test]
    fn pairing_routes_agree_on_arbitrary_frames(
        r in 1e-3_f64..100.0,
        lambda in prop::collection::vec(1e-2_f64..5.0, 3..12),
        u_r in -1.0_f64..1.0,
        seed in 0_u64..1000,
    ) {
        let mut u_t = Vec::with_capacity(lambda.len());
        let mut state = seed.wrapping_mul(0x9e3779b97f4a7c15).wrapping_add(1);
        for _ in 0..lambda.len() {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            u_t.push((state % 2000) as f64 / 1000.0 - 1.0);
        }
        let frame = StressEnergyFrame { r, lambda, u_r, u_t };
        prop_assert!(stress_energy_pairing(&frame).scaled_difference() < 1e-12);
    }

    #[test]
    fn pairing_is_quadratic_in_the_form(
        r in 1e-2_f64..50.0,
        l in 2e-2_f64..4.0,
        u_r in -1.0_f64..1.0,
        u_1 in -1.0_f64..1.0,
        t in 0.1_f64..10.0,
    ) {
        let frame = StressEnergyFrame {
            r,
            lambda: vec![l, l * 0.5 + 0.01, l * 2.0],
            u_r,
            u_t: vec![u_1, -u_1, 0.25],
        };
        let scaled = StressEnergyFrame {
            r: frame.r,
            lambda: frame.lambda.clone(),
            u_r: t * frame.u_r,
            u_t: frame.u_t.iter().map(|u| t * u).collect(),
        };
        let base = stress_energy_pairing(&frame).direct;
        let value = stress_energy_pairing(&scaled).direct;
        prop_assert!((value - t * t * base).abs() < 1e-9 * (t * t).max(1.0) * base.abs().max(1.0));
    }

    #[test]
    fn growth_entries_are_exact_logarithms(c in 1e-6_f64..100.0, r0 in 1e-3_f64..10.0) {
        let report = growth_report(c, r0).unwrap();
        for (entry, factor) in report.entries.iter().zip([10.0_f64, 100.0, 1000.0]) {
            prop_assert!((entry.integral_lower_bound - 2.0 * c * factor.ln()).abs() < 1e-12 * c.max(1.0));
        }
    }
}
