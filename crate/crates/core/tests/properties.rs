//! Property-based invariants over random parameters and sample points.

use proptest::prelude::*;

use fzeta_core::sets::{self, FractalSet, LengthModel};
use fzeta_core::tubes::TubeModel;
use fzeta_core::zeta::{self, ZetaEvalConfig};
use num_complex::Complex64;

fn cantor_params() -> impl Strategy<Value = (u32, f64)> {
    (2u32..=5, 0.05f64..0.45).prop_filter("need m*a < 1", |(m, a)| (*m as f64) * a < 0.98)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn distance_is_lipschitz((m, a) in cantor_params(), x in -0.5f64..1.5, y in -0.5f64..1.5) {
        let set = sets::make_cantor(m, a).unwrap();
        let dx = set.distance(&[x]);
        let dy = set.distance(&[y]);
        prop_assert!((dx - dy).abs() <= (x - y).abs() + 1e-14);
    }

    #[test]
    fn membership_has_zero_distance((m, a) in cantor_params(), depth in 1usize..12, path in proptest::collection::vec(0u32..5, 12)) {
        // descend the construction to a genuine member point
        let set = sets::make_cantor(m, a).unwrap();
        let mf = m as f64;
        let step = a + (1.0 - mf * a) / (mf - 1.0);
        let mut lo = 0.0f64;
        let mut len = 1.0f64;
        for k in 0..depth {
            let j = (path[k] % m) as f64;
            lo += j * step * len;
            len *= a;
        }
        // interval endpoints survive to the limit set
        prop_assert!(set.distance(&[lo]) < 1e-12);
        prop_assert!(set.distance(&[lo + len]) < 1e-12);
        // the midpoint of the first-level hole of this interval does not
        let hole_mid = lo + len * (a + step) / 2.0;
        let expected = len * (step - a) / 2.0;
        prop_assert!((set.distance(&[hole_mid]) - expected).abs() < 1e-12);
    }

    #[test]
    fn tube_monotone_and_scaling((m, a) in cantor_params(), t in 1e-9f64..0.4, lambda in 0.3f64..4.0) {
        let tube = TubeModel::cantor_gapsum(m, a);
        let v1 = tube.eval(t).unwrap();
        let v2 = tube.eval(t * 1.25).unwrap();
        prop_assert!(v2 >= v1);
        // |(λA)_{λt}| = λ |A_t| in dimension 1
        let scaled = TubeModel::scaled(tube.clone(), lambda);
        let vs = scaled.eval(lambda * t).unwrap();
        prop_assert!((vs - lambda * v1).abs() <= 1e-11 * vs.abs().max(1.0));
    }

    #[test]
    fn scaled_distance_identity((m, a) in cantor_params(), x in -0.5f64..1.5, lambda in 0.25f64..4.0) {
        let set = sets::make_cantor(m, a).unwrap();
        let scaled = sets::scale(set.clone(), lambda).unwrap();
        let lhs = scaled.distance(&[lambda * x]);
        let rhs = lambda * set.distance(&[x]);
        prop_assert!((lhs - rhs).abs() <= 1e-12 * (1.0 + rhs.abs()));
    }

    #[test]
    fn string_tube_equals_min_sum(ratio in 0.2f64..0.8, t in 1e-6f64..0.5) {
        // gap-sum formula against the literal Σ min(ℓ_j, 2t) truncated far
        // past the threshold
        let lengths = LengthModel::Geometric { first: 0.5, ratio };
        let tube = TubeModel::string_gaps(lengths.clone());
        let fast = tube.eval(t).unwrap();
        let mut literal = 2.0 * t;
        for j in 1..4000u64 {
            literal += lengths.length(j).min(2.0 * t);
        }
        literal += lengths.tail(4000); // all below 2t by then or negligible
        prop_assert!((fast - literal).abs() < 1e-10 * fast);
    }

    #[test]
    fn conjugate_symmetry_of_tube_zeta((m, a) in cantor_params(), im in 0.1f64..4.0) {
        let tube = TubeModel::cantor_gapsum(m, a);
        let d = tube.dim_hint;
        let cfg = ZetaEvalConfig::with_delta(fzeta_core::tubes::cantor_threshold(m, a));
        let s = Complex64::new(d + 0.25 * (1.0 - d) + 0.1, im);
        let z = zeta::tube_zeta(&tube, s, &cfg).unwrap().value;
        let zc = zeta::tube_zeta(&tube, s.conj(), &cfg).unwrap().value;
        prop_assert!((z.conj() - zc).norm() <= 1e-9 * z.norm().max(1.0));
    }

    #[test]
    fn spec_roundtrip_random_sets((m, a) in cantor_params(), n in 1u32..5, d in 1u32..3) {
        let cantor = sets::make_cantor(m, a).unwrap();
        let grill = sets::make_grill(cantor.clone(), d).unwrap();
        let sphere = sets::make_sphere(n).unwrap();
        let union = sets::make_union(vec![(cantor.clone(), 0.0), (cantor.clone(), 2.0)]).unwrap();
        for set in [cantor, grill, sphere, union] {
            let text = set.to_string();
            let parsed = sets::parse_spec(&text, None).unwrap();
            prop_assert_eq!(&parsed, &set, "round-trip failed for {}", text);
        }
    }

    #[test]
    fn union_tube_is_additive((m, a) in cantor_params(), t in 1e-6f64..0.49) {
        let c = sets::make_cantor(m, a).unwrap();
        let u = sets::make_union(vec![(c.clone(), 0.0), (c.clone(), 2.0)]).unwrap();
        let ut = TubeModel::for_set(&u).unwrap();
        let ct = TubeModel::for_set(&c).unwrap();
        let lhs = ut.eval(t).unwrap();
        let rhs = 2.0 * ct.eval(t).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-12 * rhs);
    }
}

#[test]
fn membership_iff_zero_distance_spot_checks() {
    let c = sets::make_cantor(2, 1.0 / 3.0).unwrap();
    // dense members: all left endpoints a few levels down
    for k in 0..200 {
        let mut x = 0.0;
        let mut len = 1.0;
        let mut key = k;
        for _ in 0..6 {
            if key % 2 == 1 {
                x += 2.0 * len / 3.0;
            }
            len /= 3.0;
            key /= 2;
        }
        assert!(c.distance(&[x]) < 1e-14);
    }
    // non-members: gap midpoints at several levels
    for k in 1..30 {
        let x = 0.5 * 3f64.powi(-k);
        let d = c.distance(&[3f64.powi(-k) + x]);
        assert!(d > 0.0);
    }

    let s = sets::make_sphere(3).unwrap();
    assert!(s.distance(&[1.0, 0.0, 0.0]) < 1e-15);
    assert!(s.distance(&[0.6, 0.8, 0.0]) < 1e-15);
    assert!(s.distance(&[0.5, 0.5, 0.5]) > 0.1);
}

#[test]
fn grill_slice_matches_monte_carlo() {
    // |({0,1} × [0,1])_t| in the plane against seeded Monte Carlo
    use rand::{Rng, SeedableRng};
    let base_set = sets::make_fractal_string(LengthModel::Finite(vec![1.0])).unwrap();
    let grill_set = sets::make_grill(base_set.clone(), 1).unwrap();
    let base = TubeModel::for_set(&base_set).unwrap();
    let grill = TubeModel::grill_layer(base, 1.0, 1e-10);
    let t = 0.1;
    let exact = grill.eval(t).unwrap();

    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0);
    let (x0, x1) = (-t, 1.0 + t);
    let (y0, y1) = (-t, 1.0 + t);
    let area = (x1 - x0) * (y1 - y0);
    let n = 1_000_000usize;
    let mut hits = 0usize;
    for _ in 0..n {
        let p = [rng.gen_range(x0..x1), rng.gen_range(y0..y1)];
        if grill_set.distance(&p) < t {
            hits += 1;
        }
    }
    let frac = hits as f64 / n as f64;
    let mc = area * frac;
    let se = area * (frac * (1.0 - frac) / n as f64).sqrt();
    assert!(
        (mc - exact).abs() <= 3.0 * se,
        "monte carlo {mc} vs slice {exact}, 3se = {}",
        3.0 * se
    );
}

#[test]
fn cantor_grill_slice_monte_carlo() {
    use rand::{Rng, SeedableRng};
    let base_set = sets::make_cantor(2, 1.0 / 3.0).unwrap();
    let grill_set = sets::make_grill(base_set.clone(), 1).unwrap();
    let tube = TubeModel::for_set(&grill_set).unwrap();
    let t = 0.05;
    let exact = tube.eval(t).unwrap();

    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
    let area = (1.0 + 2.0 * t) * (1.0 + 2.0 * t);
    let n = 1_000_000usize;
    let mut hits = 0usize;
    for _ in 0..n {
        let p = [rng.gen_range(-t..1.0 + t), rng.gen_range(-t..1.0 + t)];
        if grill_set.distance(&p) < t {
            hits += 1;
        }
    }
    let frac = hits as f64 / n as f64;
    let mc = area * frac;
    let se = area * (frac * (1.0 - frac) / n as f64).sqrt();
    assert!(
        (mc - exact).abs() <= 3.0 * se,
        "monte carlo {mc} vs slice {exact}, 3se = {}",
        3.0 * se
    );
}

#[test]
fn divergence_flip_across_the_dimension() {
    // below D the normalized volume ratio blows up along the grid, above D
    // it vanishes
    let tube = TubeModel::cantor_gapsum(2, 1.0 / 3.0);
    let d = tube.dim_hint;
    for (r, expect_big) in [(d - 0.15, true), (d + 0.15, false)] {
        let coarse = tube.eval(1e-2).unwrap() / 1e-2f64.powf(1.0 - r);
        let fine = tube.eval(1e-9).unwrap() / 1e-9f64.powf(1.0 - r);
        if expect_big {
            assert!(fine / coarse > 10.0);
        } else {
            assert!(fine / coarse < 0.1);
        }
    }
}
