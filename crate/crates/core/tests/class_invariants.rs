//! Invariants of class members under the structural operations: membership,
//! subordination, rotation, and the tilt transfer.

use num_complex::Complex64;
use proptest::prelude::*;
use tilted_caratheodory::class::{
    herglotz_build, kernel_series, subordination_omega, subordination_omega_at, tilt_from_base,
    tilt_to_base, DiscreteMeasure, TiltAngle,
};
use tilted_caratheodory::grid::EvaluationGrid;
use tilted_caratheodory::search::{random_member, split_seed};

fn small_grid() -> EvaluationGrid {
    let angles = (0..64)
        .map(|j| -std::f64::consts::PI + 2.0 * std::f64::consts::PI * (j + 1) as f64 / 64.0)
        .collect();
    EvaluationGrid::new(vec![0.2, 0.5, 0.8, 0.99], angles).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn random_members_stay_in_the_half_plane(
        lambda in -1.45f64..1.45,
        k_atoms in 1usize..9,
        seed in 0u64..1_000_000,
    ) {
        let tilt = TiltAngle::new(lambda).unwrap();
        let p = random_member(tilt, k_atoms, seed).unwrap();
        let report = p.membership(&small_grid());
        prop_assert!(report.passed, "margin = {}", report.min_margin);
    }

    #[test]
    fn subordination_round_trips(lambda in -1.3f64..1.3, seed in 0u64..100_000) {
        let tilt = TiltAngle::new(lambda).unwrap();
        let p = random_member(tilt, 3, seed).unwrap();
        let omega = subordination_omega(&p);

        // The Schwarz function fixes the origin exactly.
        prop_assert_eq!(omega.coeff(0), Complex64::new(0.0, 0.0));

        // Recomposing the kernel with omega recovers p.
        let recomposed = kernel_series(tilt, Complex64::new(1.0, 0.0), 32)
            .unwrap()
            .compose(&omega)
            .unwrap();
        prop_assert!(recomposed.max_abs_diff(&p.series().truncated(32)) < 1e-9);

        // Pointwise, omega maps the disc into itself.
        for z in small_grid().points() {
            prop_assert!(subordination_omega_at(&p, z).unwrap().norm() < 1.0);
        }
    }

    #[test]
    fn rotating_the_measure_rotates_the_argument(
        lambda in -1.3f64..1.3,
        seed in 0u64..100_000,
        phi in -3.1f64..3.1,
    ) {
        let tilt = TiltAngle::new(lambda).unwrap();
        let p = random_member(tilt, 4, seed).unwrap();
        let measure = p.measure().unwrap();
        let rot = Complex64::cis(phi);
        let rotated_atoms: Vec<Complex64> = measure.atoms().iter().map(|&x| x * rot).collect();
        let rotated = herglotz_build(
            tilt,
            &DiscreteMeasure::new(rotated_atoms, measure.weights().to_vec()).unwrap(),
            p.order(),
        );
        for n in 0..=p.order() {
            let expected = p.coeff(n) * Complex64::cis(phi * n as f64);
            prop_assert!((rotated.coeff(n) - expected).norm() < 1e-12, "n = {n}");
        }
        let z = Complex64::from_polar(0.7, 0.4);
        prop_assert!((rotated.eval(z).unwrap() - p.eval(rot * z).unwrap()).norm() < 1e-12);
    }

    #[test]
    fn tilt_transfer_round_trips(lambda in -1.4f64..1.4, seed in 0u64..100_000) {
        let tilt = TiltAngle::new(lambda).unwrap();
        let p = random_member(tilt, 3, seed).unwrap();
        let q = tilt_to_base(&p);

        // The base member is an untilted class member.
        prop_assert_eq!(q.tilt().radians(), 0.0);
        prop_assert!(q.membership(&small_grid()).passed);

        // Measure and coefficients survive the round trip.
        let back = tilt_from_base(&q, tilt).unwrap();
        prop_assert!(back.series().max_abs_diff(p.series()) < 1e-14);
        let (ma, mb) = (p.measure().unwrap(), back.measure().unwrap());
        prop_assert_eq!(ma.atoms(), mb.atoms());
        prop_assert_eq!(ma.weights(), mb.weights());
    }
}

#[test]
fn split_seed_streams_do_not_collide() {
    let mut seen = std::collections::HashSet::new();
    for stream in 0..40u64 {
        for index in 0..40u64 {
            assert!(seen.insert(split_seed(42, stream, index)));
        }
    }
}
