//! The branch functions of the distance law, written term by term: closed
//! part, single integrals, then the double integral divided by pi.

use std::f64::consts::PI;

use crate::error::Result;
use crate::law::components::region;
use crate::law::kernels::{Inner, Kernel, Outer, Piece, Setup};
use crate::law::regime::RegimeTag;
use crate::quadrature::QuadResult;
use crate::radial::root_diff;

pub(crate) fn branch(s: &Setup, tag: RegimeTag, r: f64) -> Result<QuadResult> {
    match tag {
        RegimeTag::Zero => Ok(QuadResult::ZERO),
        RegimeTag::One => Ok(value(1.0)),
        RegimeTag::G => g(s, r),
        RegimeTag::H1 => h1(s, r),
        RegimeTag::H2 => h2(s, r),
        RegimeTag::Q => q(s, r),
        RegimeTag::U => u(s, r),
        RegimeTag::V => v(s, r),
        RegimeTag::W => w(s, r),
    }
}

fn value(v: f64) -> QuadResult {
    QuadResult {
        value: v,
        ..QuadResult::ZERO
    }
}

fn area(s: &Setup, r: f64) -> Result<QuadResult> {
    let (outer, pieces) = region(s, r);
    Ok(s.double(r, outer, Kernel::Strict, &pieces)?
        .scaled(1.0 / PI))
}

fn g(s: &Setup, r: f64) -> Result<QuadResult> {
    Ok(value(s.f1_cdf(r)) + s.j1(r, s.b - r, s.b + r)? - s.k1(r, 0.0, r)? + area(s, r)?)
}

fn h1(s: &Setup, r: f64) -> Result<QuadResult> {
    let closed = -s.both_still() * (s.q1 * root_diff(s.a, r - s.b)).exp();
    Ok(value(1.0 + closed) + s.j1(r, r - s.b, r + s.b)? - s.k2(r, 0.0, s.b)? + area(s, r)?)
}

fn h2(s: &Setup, r: f64) -> Result<QuadResult> {
    let closed = s.f1_cdf(r) + s.still_angle(r)?;
    Ok(
        value(closed) + s.j1(r, s.b - r, s.a)? + s.j2(r, s.a - r, s.b)? - s.k1(r, 0.0, r)?
            + area(s, r)?,
    )
}

fn q(s: &Setup, r: f64) -> Result<QuadResult> {
    let closed =
        1.0 - s.both_still() * (s.q1 * root_diff(s.a, r - s.b)).exp() + s.still_angle(r)?;
    Ok(
        value(closed) + s.j1(r, r - s.b, s.a)? + s.j2(r, s.a - r, s.b)? - s.k2(r, 0.0, s.b)?
            + area(s, r)?,
    )
}

fn u(s: &Setup, r: f64) -> Result<QuadResult> {
    let closed =
        1.0 - s.both_still() * (s.q2 * root_diff(s.b, r - s.a)).exp() + s.still_angle(r)?;
    Ok(
        value(closed) + s.j1(r, r - s.b, s.a)? + s.j2(r, r - s.a, s.b)? - s.k1(r, r - s.b, s.a)?
            + area(s, r)?,
    )
}

fn v(s: &Setup, r: f64) -> Result<QuadResult> {
    let (a, b) = (s.a, s.b);
    let closed = s.f1_cdf(r) + s.still_angle(r)?;
    let sat = |outer, pieces: &[Piece]| s.double(r, outer, Kernel::Saturating, pieces);
    let full = sat(
        Outer::First,
        &[
            Piece::new(0.0, r, Inner::Full),
            Piece::new(r, a, Inner::Full),
        ],
    )?;
    let far_first = sat(Outer::First, &[Piece::new(r, a, Inner::ZeroToSMinusR)])?;
    let near = sat(Outer::First, &[Piece::new(0.0, r, Inner::ZeroToRMinusS)])?;
    let far_second = sat(Outer::Second, &[Piece::new(r, b, Inner::ZeroToSMinusR)])?;
    let double = (full - far_first - near - far_second).scaled(1.0 / PI);
    Ok(value(closed) + s.j1(r, b - r, a)? + s.j2(r, a - r, b)? - s.k1(r, 0.0, r)? + double)
}

fn w(s: &Setup, r: f64) -> Result<QuadResult> {
    let (a, b) = (s.a, s.b);
    let closed = 1.0 - s.both_still() * (s.q2 * root_diff(b, r - a)).exp() + s.still_angle(r)?;
    let double = s.double(
        r,
        Outer::First,
        Kernel::Strict,
        &[Piece::new(r - b, a, Inner::RMinusTop)],
    )?;
    Ok(
        value(closed) + s.j1(r, r - b, a)? + s.j2(r, r - a, b)? - s.k1(r, r - b, a)?
            + double.scaled(1.0 / PI),
    )
}
