mod common;

use std::f64::consts::PI;

use flightdist::mc::sample_pairs;
use flightdist::{
    classify, i1, i2, joint_00, joint_01, joint_10, phi, phi_components, DistanceLaw, PairParams,
    Regime, RegimeTag,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn pair(c1: f64, l1: f64, c2: f64, l2: f64) -> PairParams {
    PairParams::from_values(c1, l1, c2, l2).unwrap()
}

#[test]
fn classify_examples() {
    assert_eq!(
        classify(&pair(2.0, 1.0, 1.0, 1.0), 0.5, 1.0).unwrap(),
        RegimeTag::G
    );
    assert_eq!(
        classify(&pair(3.0, 1.0, 1.0, 1.0), 1.5, 1.0).unwrap(),
        RegimeTag::H1
    );
    assert_eq!(
        classify(&pair(1.0, 1.0, 1.0, 1.0), 1.5, 1.0).unwrap(),
        RegimeTag::W
    );
    let eq = Regime::locate(&pair(1.0, 1.0, 1.0, 1.0), 0.3, 2.0).unwrap();
    assert_eq!((eq.tag, eq.junctions), (RegimeTag::V, vec![0.0, 2.0, 4.0]));
}

#[test]
fn still_component() {
    let p = pair(2.0, 1.3, 1.0, 0.4);
    let t = 1.2;
    assert_eq!(joint_00(&p, 1.2, t).unwrap(), 0.0);
    let full = (-(1.7f64) * t).exp();
    assert!((joint_00(&p, 3.6, t).unwrap() - full).abs() < 1e-15);
    let eq = pair(1.0, 1.0, 1.0, 1.0);
    let v = joint_00(&eq, 2f64.sqrt(), 1.0).unwrap();
    assert!((v - (-2f64).exp() / 2.0).abs() < 1e-15);
}

#[test]
fn one_moving_limits() {
    // No turns of the moving flight: nothing to integrate.
    assert!(
        joint_10(&pair(2.0, 1e-12, 1.0, 1.0), 0.7, 1.0)
            .unwrap()
            .value
            .abs()
            < 1e-11
    );
    assert!(
        joint_01(&pair(2.0, 1.0, 1.0, 1e-12), 1.8, 1.0)
            .unwrap()
            .value
            .abs()
            < 1e-11
    );
    assert_eq!(
        joint_01(&pair(2.0, 1.0, 1.0, 1.0), 0.5, 1.0).unwrap().value,
        0.0
    );

    // Close to the top of the support, the conditional probability is ~1.
    let p = pair(2.0, 0.8, 1.0, 1.5);
    let r = 3.0 * (1.0 - 1e-6);
    let want10 = (-1.5f64).exp() * (1.0 - (-0.8f64).exp());
    let want01 = (-0.8f64).exp() * (1.0 - (-1.5f64).exp());
    assert!((joint_10(&p, r, 1.0).unwrap().value - want10).abs() < 1e-3);
    assert!((joint_01(&p, r, 1.0).unwrap().value - want01).abs() < 1e-3);
}

#[test]
fn both_moving_limits() {
    let p = pair(1.7, 0.9, 1.1, 2.0);
    assert!(i1(&p, 1e-9, 1.0).unwrap().value.abs() < 1e-15);
    assert!(i2(&p, 1e-9, 1.0).unwrap().value.abs() < 1e-12);
    let top = i1(&p, 2.8, 1.0).unwrap().value + i2(&p, 2.8, 1.0).unwrap().value / PI;
    assert!((top - (1.0 - (-0.9f64).exp()) * (1.0 - (-2.0f64).exp())).abs() < 1e-7);
}

/// Monte Carlo frequency of `{rho < r}` together with an event-count filter,
/// with its standard error.
fn mc_joint(p: &PairParams, r: f64, keep: impl Fn(u32, u32) -> bool) -> (f64, f64) {
    let n = 1_000_000;
    let hits = sample_pairs(p, 1.0, n, 2024)
        .unwrap()
        .into_iter()
        .filter(|(a, b)| {
            let d = (a.position[0] - b.position[0]).hypot(a.position[1] - b.position[1]);
            d < r && keep(a.events, b.events)
        })
        .count();
    let f = hits as f64 / n as f64;
    (f, (f * (1.0 - f) / n as f64).sqrt())
}

#[test]
fn one_moving_against_simulation() {
    let p = pair(2.0, 1.0, 1.0, 1.0);
    let v = joint_10(&p, 0.5, 1.0).unwrap().value;
    let (f, se) = mc_joint(&p, 0.5, |n1, n2| n1 >= 1 && n2 == 0);
    assert!((v - f).abs() < 3.0 * se, "{v} vs {f} (se {se})");
    let v = joint_01(&p, 1.8, 1.0).unwrap().value;
    let (f, se) = mc_joint(&p, 1.8, |n1, n2| n1 == 0 && n2 >= 1);
    assert!((v - f).abs() < 3.0 * se, "{v} vs {f} (se {se})");
}

#[test]
fn region_oracles() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for _ in 0..20 {
        let p = common::random_pair(&mut rng);
        let t = rng.random_range(0.5..2.0);
        let r = p.max_distance(t) * rng.random_range(0.01..0.99);
        let a = i1(&p, r, t).unwrap().value;
        let b = common::i1_masked(&p, r, t, 1e-9).unwrap().value;
        assert!((a - b).abs() < 1e-6, "i1 {p:?} r={r} t={t}: {a} vs {b}");
        let a = i2(&p, r, t).unwrap().value;
        let b = common::i2_masked(&p, r, t, 1e-9).unwrap().value;
        assert!((a - b).abs() < 1e-5, "i2 {p:?} r={r} t={t}: {a} vs {b}");
        assert!((0.0..=PI).contains(&a));
    }
}

#[test]
fn region_oracle_where_bounds_would_invert() {
    // c2 < c1 < 2 c2 and r > c1 t / 2: the middle piece of the 5-gon would
    // have its bounds reversed.
    let p = pair(1.5, 1.0, 1.0, 1.0);
    for &r in &[0.76, 0.85, 0.95, 1.0] {
        assert_eq!(classify(&p, r, 1.0).unwrap(), RegimeTag::H2);
        let a = i2(&p, r, 1.0).unwrap().value;
        let b = common::i2_masked(&p, r, 1.0, 1e-10).unwrap().value;
        assert!((a - b).abs() < 1e-8, "r={r}: {a} vs {b}");
    }
}

#[test]
fn support_ends() {
    let p = pair(2.0, 1.0, 1.0, 2.0);
    assert_eq!(phi(&p, -1.0, 1.0).unwrap().value, 0.0);
    assert_eq!(phi(&p, 0.0, 1.0).unwrap().value, 0.0);
    assert_eq!(phi(&p, 3.03, 1.0).unwrap().value, 1.0);
    let top = phi(&p, 3.0, 1.0).unwrap();
    assert_eq!(top.regime, RegimeTag::U);
    assert!((top.value - 1.0).abs() < 1e-12);
    let sum = phi_components(&p, 3.0, 1.0).unwrap().sum().value;
    assert!((sum - 1.0).abs() < 1e-6);
}

#[test]
fn nearly_still_flights() {
    let (c1, c2) = (1.8, 1.0);
    let p = pair(c1, 1e-8, c2, 1e-8);
    for k in 1..20 {
        let r = (c1 - c2) + (2.0 * c2) * k as f64 / 20.0;
        let want = ((c1 * c1 + c2 * c2 - r * r) / (2.0 * c1 * c2)).acos() / PI;
        let got = phi(&p, r, 1.0).unwrap().value;
        assert!((got - want).abs() < 1e-6, "r={r}: {got} vs {want}");
    }
}

#[test]
fn branches_match_components() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut seen = std::collections::HashSet::new();
    for i in 0..60 {
        let p = match i % 4 {
            0 => common::random_pair(&mut rng),
            1 => pair(
                1.3,
                rng.random_range(0.2..3.0),
                1.0,
                rng.random_range(0.2..3.0),
            ),
            2 => pair(
                2.0,
                rng.random_range(0.2..3.0),
                1.0,
                rng.random_range(0.2..3.0),
            ),
            _ => pair(
                1.0,
                rng.random_range(0.2..3.0),
                1.0,
                rng.random_range(0.2..3.0),
            ),
        };
        let t = rng.random_range(0.5..2.0);
        let r = p.max_distance(t) * rng.random_range(0.001..1.0);
        let v = phi(&p, r, t).unwrap();
        let c = phi_components(&p, r, t).unwrap();
        seen.insert(v.regime);
        assert!(
            (v.raw - c.sum().value).abs() < 1e-6,
            "{p:?} r={r}: {} vs {}",
            v.raw,
            c.sum().value
        );
        assert!(v.consistent);

        let (e1, e2) = (
            (-p.first().rate() * t).exp(),
            (-p.second().rate() * t).exp(),
        );
        let slack = 1e-9;
        assert!(c.p00.value <= e1 * e2 + slack);
        assert!(c.p10.value <= e2 * (1.0 - e1) + slack);
        assert!(c.p01.value <= e1 * (1.0 - e2) + slack);
        assert!(c.p11.value <= (1.0 - e1) * (1.0 - e2) + slack);
        for q in [c.p10, c.p01, c.p11] {
            assert!(q.value >= -slack);
        }
    }
    for tag in [
        RegimeTag::G,
        RegimeTag::H2,
        RegimeTag::Q,
        RegimeTag::U,
        RegimeTag::V,
        RegimeTag::W,
    ] {
        assert!(seen.contains(&tag), "{tag} not covered");
    }
}

#[test]
fn continuous_across_junctions() {
    // The density may blow up like an inverse square root at a junction, so
    // the jump over [j - h, j + h] must shrink at least that fast.
    for p in [
        pair(3.0, 1.0, 1.0, 1.0),
        pair(1.5, 0.7, 1.0, 2.0),
        pair(2.0, 1.0, 1.0, 1.0),
        pair(1.0, 1.0, 1.0, 2.5),
    ] {
        let t = 1.0;
        let law = DistanceLaw::new(p);
        let reg = law.regime(0.1, t).unwrap();
        let top = p.max_distance(t);
        let gap = |j: f64, h: f64| {
            (law.phi(j + h, t).unwrap().value - law.phi(j - h, t).unwrap().value).abs()
        };
        for &j in &reg.junctions[1..reg.junctions.len() - 1] {
            let (wide, narrow) = (gap(j, 1e-4 * top), gap(j, 1e-8 * top));
            assert!(
                narrow < 1e-3 * top.sqrt() && narrow < wide / 20.0,
                "{p:?} at {j}: {wide} {narrow}"
            );
        }
    }
}

#[test]
fn near_equal_speeds() {
    let eq = DistanceLaw::new(pair(1.0, 1.0, 1.0, 1.0));
    let near = DistanceLaw::new(pair(1.0 + 1e-4, 1.0, 1.0, 1.0));
    for k in 1..=20 {
        let r = 2.0 * k as f64 / 21.0;
        let a = eq.phi(r, 1.0).unwrap();
        let b = near.phi(r, 1.0).unwrap();
        assert!((a.value - b.value).abs() < 1e-2, "r={r}");
    }
}

#[test]
fn monotone_on_grid() {
    for p in [pair(2.0, 1.0, 1.0, 2.0), pair(1.0, 0.5, 1.0, 3.0)] {
        let law = DistanceLaw::new(p);
        let top = p.max_distance(1.0);
        let rs: Vec<f64> = (0..=400).map(|i| top * i as f64 / 400.0).collect();
        let vals: Vec<_> = law.grid(&rs, 1.0).into_iter().map(|v| v.unwrap()).collect();
        for w in vals.windows(2) {
            assert!(w[1].value >= w[0].value - 2.0 * (w[0].abs_error + w[1].abs_error));
        }
    }
}

#[test]
fn grid_keeps_order() {
    let law = DistanceLaw::new(pair(2.0, 1.0, 1.0, 1.0));
    let rs = [2.5, 0.1, 1.7];
    let out = law.grid(&rs, 1.0);
    for (r, v) in rs.iter().zip(out) {
        assert_eq!(v.unwrap(), law.phi(*r, 1.0).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn label_swap_invariance(c1 in 0.3f64..3.0, c2 in 0.3f64..3.0, l1 in 0.1f64..3.0, l2 in 0.1f64..3.0, u in 0.0f64..1.05) {
        let a = pair(c1, l1, c2, l2);
        let b = pair(c2, l2, c1, l1);
        let r = u * a.max_distance(1.0);
        prop_assert_eq!(phi(&a, r, 1.0).unwrap(), phi(&b, r, 1.0).unwrap());
    }

    #[test]
    fn values_are_probabilities(c1 in 0.3f64..3.0, c2 in 0.3f64..3.0, l1 in 0.1f64..4.0, l2 in 0.1f64..4.0, t in 0.2f64..3.0, u in -0.1f64..1.1) {
        let p = pair(c1, l1, c2, l2);
        let v = phi(&p, u * p.max_distance(t), t).unwrap();
        prop_assert!((0.0..=1.0).contains(&v.value));
        prop_assert!(v.consistent);
        prop_assert!(v.abs_error >= 0.0);
    }
}
