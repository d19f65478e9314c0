//! The distance law split by whether each flight has changed direction:
//! `P(rho < r, N1 = 0, N2 = 0)`, `P(rho < r, N1 >= 1, N2 = 0)`, and so on.
//! Each piece is computed from its own definition, so their sum is an
//! independent check on the branch formulas.

use crate::error::Result;
use crate::law::kernels::{Inner, Kernel, Outer, Piece, Setup};
use crate::quadrature::QuadResult;

/// Which of the five region shapes the double integral over both moving
/// flights takes at a given radius.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum RegionCase {
    /// `r <= b` and `b + r <= a`
    NarrowInside,
    /// `r <= b` and `b + r > a`
    NarrowClipped,
    /// `b < r <= a` and `b + r <= a`
    WideInside,
    /// `b < r <= a` and `b + r > a`
    WideClipped,
    /// `r > a`
    Beyond,
}

impl RegionCase {
    pub fn of(s: &Setup, r: f64) -> Self {
        let (a, b) = (s.a, s.b);
        if r > a {
            RegionCase::Beyond
        } else if r <= b {
            if b + r <= a {
                RegionCase::NarrowInside
            } else {
                RegionCase::NarrowClipped
            }
        } else if b + r <= a {
            RegionCase::WideInside
        } else {
            RegionCase::WideClipped
        }
    }
}

/// Iterated bounds of `{|xi - zeta| < r < xi + zeta}` inside the rectangle
/// `(0, a) x (0, b)`, outer variable `zeta` except in the last case.
pub(crate) fn region(s: &Setup, r: f64) -> (Outer, Vec<Piece>) {
    let (a, b) = (s.a, s.b);
    match RegionCase::of(s, r) {
        RegionCase::NarrowInside => (
            Outer::Second,
            vec![
                Piece::new(0.0, r, Inner::RMinusRPlus),
                Piece::new(r, b, Inner::SMinusSPlus),
            ],
        ),
        RegionCase::NarrowClipped => {
            let pieces = if a - r >= r {
                vec![
                    Piece::new(0.0, r, Inner::RMinusRPlus),
                    Piece::new(r, a - r, Inner::SMinusSPlus),
                    Piece::new(a - r, b, Inner::SMinusTop),
                ]
            } else {
                // Once a - r drops below r the strip (zeta - r, zeta + r)
                // is never the binding constraint; the upper edge a takes
                // over before zeta reaches r.
                vec![
                    Piece::new(0.0, a - r, Inner::RMinusRPlus),
                    Piece::new(a - r, r, Inner::RMinusTop),
                    Piece::new(r, b, Inner::SMinusTop),
                ]
            };
            (Outer::Second, pieces)
        }
        RegionCase::WideInside => (Outer::Second, vec![Piece::new(0.0, b, Inner::RMinusRPlus)]),
        RegionCase::WideClipped => (
            Outer::Second,
            vec![
                Piece::new(0.0, a - r, Inner::RMinusRPlus),
                Piece::new(a - r, b, Inner::RMinusTop),
            ],
        ),
        RegionCase::Beyond => (Outer::First, vec![Piece::new(r - b, a, Inner::RMinusTop)]),
    }
}

pub(crate) fn joint_00(s: &Setup, r: f64) -> Result<f64> {
    if r <= s.a - s.b {
        Ok(0.0)
    } else if r <= s.a + s.b {
        s.still_angle(r)
    } else {
        Ok(s.both_still())
    }
}

pub(crate) fn joint_10(s: &Setup, r: f64) -> Result<QuadResult> {
    let (a, b) = (s.a, s.b);
    if r <= 0.0 {
        return Ok(QuadResult::ZERO);
    }
    if r > a + b {
        return Ok(value((-s.l2t).exp() * -(-s.l1t).exp_m1()));
    }
    let beta = (b + r).min(a);
    if r <= b {
        s.j1(r, b - r, beta)
    } else {
        let near = (-s.l2t).exp() * s.f1_cdf(r - b);
        Ok(value(near) + s.j1(r, r - b, beta)?)
    }
}

pub(crate) fn joint_01(s: &Setup, r: f64) -> Result<QuadResult> {
    let (a, b) = (s.a, s.b);
    if r <= a - b || r <= 0.0 {
        Ok(QuadResult::ZERO)
    } else if r > a + b {
        Ok(value((-s.l1t).exp() * -(-s.l2t).exp_m1()))
    } else if r <= a {
        s.j2(r, a - r, b)
    } else {
        let near = (-s.l1t).exp() * s.f2_cdf(r - a);
        Ok(value(near) + s.j2(r, r - a, b)?)
    }
}

/// Probability that both flights have moved and `R1 + R2 < r`.
pub(crate) fn i1(s: &Setup, r: f64) -> Result<QuadResult> {
    let (a, b) = (s.a, s.b);
    let moved1 = -(-s.l1t).exp_m1();
    let moved2 = -(-s.l2t).exp_m1();
    if r <= 0.0 {
        Ok(QuadResult::ZERO)
    } else if r <= b {
        Ok(value(s.f1_cdf(r)) - s.k1(r, 0.0, r)?)
    } else if r <= a {
        Ok(value(moved2) - s.k2(r, 0.0, b)?)
    } else if r <= a + b {
        let tail = s.both_still() * (s.q1 * crate::radial::root_diff(a, r - b)).exp_m1();
        Ok(value(moved1 * moved2 + tail) - s.k1(r, r - b, a)?)
    } else {
        Ok(value(moved1 * moved2))
    }
}

/// Double integral of the triangle angle against both radial densities over
/// the region where the angle is defined.
pub(crate) fn i2(s: &Setup, r: f64) -> Result<QuadResult> {
    if r <= 0.0 || r >= s.a + s.b {
        return Ok(QuadResult::ZERO);
    }
    let (outer, pieces) = region(s, r);
    s.double(r, outer, Kernel::Strict, &pieces)
}

fn value(v: f64) -> QuadResult {
    QuadResult {
        value: v,
        ..QuadResult::ZERO
    }
}
