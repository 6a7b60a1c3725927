mod common;

use std::collections::BTreeSet;

use common::{dist2, point_segment_distance};
use ornata::curves::PlaneCurve;
use ornata::stitch::{circle_stitch, multiplier_stitch, two_rail_stitch, StitchError, StitchPattern};
use proptest::prelude::*;

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 { a } else { gcd(b, a % b) }
}

fn chord_set(p: &StitchPattern) -> BTreeSet<[usize; 2]> {
    p.chords.iter().map(|&[a, b]| [a.min(b), a.max(b)]).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn axis_chords_touch_the_scaled_parabola(n in 5usize..80, la in 0.2f64..5.0, lb in 0.2f64..5.0) {
        let a = PlaneCurve::segment([0.0, 0.0], [la, 0.0], n - 1).unwrap();
        let b = PlaneCurve::segment([0.0, 0.0], [0.0, lb], n - 1).unwrap();
        let p = two_rail_stitch(&a, &b, n, true).unwrap();
        prop_assert_eq!(p.chords.len(), n);
        prop_assert_eq!(p.pins.len(), 2 * n - 1);
        prop_assert!(p.validate().is_ok());
        // sqrt(x/la) + sqrt(y/lb) = 1
        let env: Vec<[f64; 2]> = (0..=20_000)
            .map(|i| {
                let u = i as f64 / 20_000.0;
                [la * u * u, lb * (1.0 - u) * (1.0 - u)]
            })
            .collect();
        let tol = 1e-3 * p.diameter();
        for i in 0..n {
            let (s, e) = p.chord_endpoints(i);
            let d = env.iter().map(|q| point_segment_distance(*q, s, e)).fold(f64::INFINITY, f64::min);
            prop_assert!(d <= tol, "chord {} is {} away", i, d);
        }
    }

    #[test]
    fn disjoint_rails_keep_every_pin(n in 2usize..60, reversed: bool) {
        let a = PlaneCurve::segment([0.0, 0.0], [1.0, 0.0], n).unwrap();
        let b = PlaneCurve::segment([0.0, 1.0], [1.0, 2.0], 3 * n).unwrap();
        let p = two_rail_stitch(&a, &b, n, reversed).unwrap();
        prop_assert_eq!(p.pins.len(), 2 * n);
        prop_assert_eq!(p.chords.len(), n);
        prop_assert_eq!(p.rails.len(), 2);
        prop_assert!(p.rails.iter().all(|r| r.pins.len() == n));
    }

    #[test]
    fn circle_chords_are_tangent_to_the_inner_circle(pins in 3usize..200, step_seed: usize, r in 0.1f64..10.0) {
        let step = 1 + step_seed % (pins - 1);
        let p = circle_stitch(pins, step, r).unwrap();
        prop_assert_eq!(p.chords.len(), pins);
        let inner = r * (std::f64::consts::PI * step as f64 / pins as f64).cos().abs();
        for i in 0..pins {
            let (a, b) = p.chord_endpoints(i);
            prop_assert!((dist2(a, [0.0, 0.0]) - r).abs() < 1e-12 * r);
            let d = point_segment_distance([0.0, 0.0], a, b);
            prop_assert!((d - inner).abs() < 1e-9 * r, "{} vs {}", d, inner);
        }
    }

    #[test]
    fn relabelling_by_rotation_keeps_the_chords(pins in 3usize..120, seed: usize, shift_seed: usize, factor_seed in 2usize..12) {
        let step = 1 + seed % (pins - 1);
        let shift = shift_seed % pins;
        let rotate = |p: &StitchPattern| -> BTreeSet<[usize; 2]> {
            p.chords.iter().map(|&[a, b]| {
                let (a, b) = ((a + shift) % pins, (b + shift) % pins);
                [a.min(b), a.max(b)]
            }).collect()
        };
        let c = circle_stitch(pins, step, 1.0).unwrap();
        prop_assert_eq!(rotate(&c), chord_set(&c));
        let m = multiplier_stitch(pins, factor_seed, 1.0).unwrap();
        let fixed = (0..pins).filter(|k| (factor_seed - 1) * k % pins == 0).count();
        prop_assert_eq!(m.chords.len(), pins - fixed);
        prop_assert_eq!(fixed, gcd((factor_seed - 1) % pins, pins));
    }
}

#[test]
fn cardioid_cusp_sits_on_the_rim() {
    // with factor 2 the chord through pin 0 degenerates, the cusp is at angle 0
    let p = multiplier_stitch(360, 2, 1.0).unwrap();
    let near = (0..p.chords.len())
        .map(|i| {
            let (a, b) = p.chord_endpoints(i);
            point_segment_distance([1.0 / 3.0, 0.0], a, b)
        })
        .fold(f64::INFINITY, f64::min);
    assert!(near < 0.02, "{near}");
}

#[test]
fn bad_inputs_are_rejected() {
    assert!(matches!(circle_stitch(2, 1, 1.0), Err(StitchError::TooFewPins { min: 3, got: 2 })));
    assert!(matches!(circle_stitch(10, 0, 1.0), Err(StitchError::BadStep { .. })));
    assert!(matches!(circle_stitch(10, 10, 1.0), Err(StitchError::BadStep { .. })));
    assert!(matches!(circle_stitch(10, 3, -1.0), Err(StitchError::BadRadius(_))));
    assert!(matches!(multiplier_stitch(10, 1, 1.0), Err(StitchError::BadStep { .. })));
    let short = PlaneCurve::segment([0.0, 0.0], [1.0, 0.0], 3).unwrap();
    assert!(matches!(two_rail_stitch(&short, &short, 10, false), Err(StitchError::RailTooShort { .. })));
    assert!(matches!(two_rail_stitch(&short, &short, 1, false), Err(StitchError::TooFewPins { .. })));
    assert!(matches!(two_rail_stitch(&short, &short, 4, false), Err(StitchError::ZeroLengthChord(0))));
}
