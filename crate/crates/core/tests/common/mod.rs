//! Oracles shared by the integration tests and the acceptance run.
#![allow(dead_code)]

use std::cell::Cell;

use flightdist::quadrature::{integrate_1d_with_breaks, QuadResult, SingularSpec};
use flightdist::{PairParams, Result};
use rand::Rng;

/// Density of the absolutely continuous part of the radius of one flight.
pub fn f_ac(x: f64, c: f64, l: f64, t: f64) -> f64 {
    let p = c * t;
    if !(x > 0.0 && x < p) {
        return 0.0;
    }
    let s = ((p - x) * (p + x)).sqrt();
    l / c * x / s * (-l * t + l / c * s).exp()
}

/// Integrates `f(xi, zeta) f1(xi) f2(zeta)` over the whole rectangle
/// `(0, c1 t) x (0, c2 t)`. The inner integral is split where the masks used
/// below can jump (`xi = |r - zeta|` and `xi = r + zeta`); without the
/// split, a narrow support near `zeta = 0` falls between the nodes.
fn rectangle<F>(pair: &PairParams, r: f64, t: f64, tol: f64, f: F) -> Result<QuadResult>
where
    F: Fn(f64, f64) -> f64,
{
    let (c1, l1) = (pair.first().speed(), pair.first().rate());
    let (c2, l2) = (pair.second().speed(), pair.second().rate());
    let (a, b) = (c1 * t, c2 * t);
    let failed = Cell::new(None);
    // The inner breakpoints cross 0 or a at these outer values.
    let mut outer_breaks = vec![0.0, b];
    outer_breaks.extend([r, a - r, r - a].into_iter().filter(|&z| z > 0.0 && z < b));
    outer_breaks.sort_by(f64::total_cmp);
    let outer = integrate_1d_with_breaks(
        |zeta| {
            let mut breaks = vec![0.0, a];
            breaks.extend(
                [(r - zeta).abs(), r + zeta]
                    .into_iter()
                    .filter(|&x| x > 0.0 && x < a),
            );
            breaks.sort_by(f64::total_cmp);
            let inner = integrate_1d_with_breaks(
                |xi| f(xi, zeta) * f_ac(xi, c1, l1, t),
                &breaks,
                SingularSpec::right(a),
                0.1 * tol,
            );
            match inner {
                Ok(q) => q.value * f_ac(zeta, c2, l2, t),
                Err(e) => {
                    failed.set(Some(e));
                    f64::NAN
                }
            }
        },
        &outer_breaks,
        SingularSpec::right(b),
        tol,
    );
    if let Some(e) = failed.take() {
        return Err(e);
    }
    outer
}

/// `P(R1 + R2 < r, both moved)` by masking the whole rectangle.
pub fn i1_masked(pair: &PairParams, r: f64, t: f64, tol: f64) -> Result<QuadResult> {
    rectangle(
        pair,
        r,
        t,
        tol,
        |xi, zeta| if xi + zeta < r { 1.0 } else { 0.0 },
    )
}

/// The arccos kernel masked to `{xi + zeta > r, |xi - zeta| <= r}`.
pub fn i2_masked(pair: &PairParams, r: f64, t: f64, tol: f64) -> Result<QuadResult> {
    rectangle(pair, r, t, tol, |xi, zeta| {
        if xi + zeta > r && (xi - zeta).abs() <= r {
            ((xi * xi + zeta * zeta - r * r) / (2.0 * xi * zeta))
                .clamp(-1.0, 1.0)
                .acos()
        } else {
            0.0
        }
    })
}

/// A random pair with `c1 >= c2` and moderate rates.
pub fn random_pair<R: Rng>(rng: &mut R) -> PairParams {
    let c2 = rng.random_range(0.3..1.5);
    let c1 = c2 * rng.random_range(1.0..3.5);
    PairParams::from_values(
        c1,
        rng.random_range(0.2..3.0),
        c2,
        rng.random_range(0.2..3.0),
    )
    .unwrap()
}
