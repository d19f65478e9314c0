//! Building blocks shared by the branch formulas and the joint components:
//! the triangle angle, the single integrals against one radial density and
//! the double integrals against both.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::model::PairParams;
use crate::quadrature::{integrate_inv_sqrt, nested, Axis, Breaks, Point, QuadResult};
use crate::radial::root_diff;

/// Relative slack allowed on the triangle inequalities before the angle is
/// declared undefined.
const ANGLE_SLACK: f64 = 1e-12;

/// Angle opposite to side `r` in a triangle with sides `x`, `y`, `r`, i.e.
/// `arccos((x^2 + y^2 - r^2) / (2 x y))`.
///
/// Evaluated through the half-angle tangent so that it stays accurate when
/// the triangle is nearly flat. Slightly violated triangle inequalities (from
/// rounding at region edges) are clamped; larger violations give NaN.
#[inline]
pub(crate) fn triangle_angle(x: f64, y: f64, r: f64) -> f64 {
    let u = (r - x + y) * (r + x - y);
    let v = (x + y - r) * (x + y + r);
    let slack = ANGLE_SLACK * (r * r + x * x + y * y);
    if u < -slack || v < -slack {
        return f64::NAN;
    }
    2.0 * u.max(0.0).sqrt().atan2(v.max(0.0).sqrt())
}

/// Like [`triangle_angle`] but extended to all `x, y > 0`: 0 when the two
/// circles of radius `x` and `y` never come within `r`, and `pi` when they
/// always do.
#[inline]
pub(crate) fn triangle_angle_saturating(x: f64, y: f64, r: f64) -> f64 {
    let u = (r - x + y) * (r + x - y);
    let v = (x + y - r) * (x + y + r);
    2.0 * u.max(0.0).sqrt().atan2(v.max(0.0).sqrt())
}

/// Which triangle kernel a double integral uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Kernel {
    Strict,
    Saturating,
}

/// Inner bounds for a double integral whose outer variable is `s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Inner {
    /// `(r - s, r + s)`
    RMinusRPlus,
    /// `(s - r, s + r)`
    SMinusSPlus,
    /// `(r - s, top)`
    RMinusTop,
    /// `(s - r, top)`
    SMinusTop,
    /// `(0, top)` with breakpoints where the saturating kernel switches.
    Full,
    /// `(0, s - r)`
    ZeroToSMinusR,
    /// `(0, r - s)`
    ZeroToRMinusS,
}

/// One rectangle-like piece of an iterated double integral: outer range and
/// the rule giving the inner range.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Piece {
    pub lo: f64,
    pub hi: f64,
    pub inner: Inner,
}

impl Piece {
    pub fn new(lo: f64, hi: f64, inner: Inner) -> Self {
        Self { lo, hi, inner }
    }
}

/// Which radial density carries the outer variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Outer {
    /// Outer `zeta` (second flight), inner `xi` (first flight).
    Second,
    /// Outer `xi` (first flight), inner `zeta` (second flight).
    First,
}

/// Pair parameters at a fixed time, with the tolerances for this evaluation.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Setup {
    /// `c1 t`
    pub a: f64,
    /// `c2 t`
    pub b: f64,
    pub l1t: f64,
    pub l2t: f64,
    /// `lambda1 / c1`
    pub q1: f64,
    /// `lambda2 / c2`
    pub q2: f64,
    pub tol_1d: f64,
    pub tol_2d: f64,
}

impl Setup {
    pub fn new(pair: &PairParams, t: f64, tol_1d: f64, tol_2d: f64) -> Self {
        let (f, s) = (pair.first(), pair.second());
        Self {
            a: f.reach(t),
            b: s.reach(t),
            l1t: f.rate() * t,
            l2t: s.rate() * t,
            q1: f.rate() / f.speed(),
            q2: s.rate() / s.speed(),
            tol_1d,
            tol_2d,
        }
    }

    /// `lambda1 t + lambda2 t`
    #[inline]
    pub fn lt(&self) -> f64 {
        self.l1t + self.l2t
    }

    /// `exp(-(lambda1 + lambda2) t)`
    pub fn both_still(&self) -> f64 {
        (-self.lt()).exp()
    }

    /// Absolutely continuous part of `P(R1 < s)`, for `0 <= s <= a`.
    pub fn f1_cdf(&self, s: f64) -> f64 {
        -(-self.l1t + self.q1 * root_diff(self.a, s)).exp_m1()
    }

    /// Absolutely continuous part of `P(R2 < s)`, for `0 <= s <= b`.
    pub fn f2_cdf(&self, s: f64) -> f64 {
        -(-self.l2t + self.q2 * root_diff(self.b, s)).exp_m1()
    }

    /// Probability that both flights are still on their first segment and
    /// are closer than `r`, for `a - b < r <= a + b`.
    pub fn still_angle(&self, r: f64) -> Result<f64> {
        let th = checked(triangle_angle(self.a, self.b, r), "still angle")?;
        Ok(self.both_still() * th / PI)
    }

    /// `e^{-lambda2 t} / pi * int_lo^hi angle(xi, b, r) f1(xi) dxi`:
    /// first flight moved, second still on the circle of radius `b`.
    pub fn j1(&self, r: f64, lo: f64, hi: f64) -> Result<QuadResult> {
        let (q1, b, lt) = (self.q1, self.b, self.lt());
        self.single(lo, hi, self.a, |xi, root| {
            q1 * xi * (-lt + q1 * root).exp() * triangle_angle(xi, b, r) / PI
        })
    }

    /// Mirror of [`Setup::j1`]: second flight moved, first still at radius `a`.
    pub fn j2(&self, r: f64, lo: f64, hi: f64) -> Result<QuadResult> {
        let (q2, a, lt) = (self.q2, self.a, self.lt());
        self.single(lo, hi, self.b, |zeta, root| {
            q2 * zeta * (-lt + q2 * root).exp() * triangle_angle(a, zeta, r) / PI
        })
    }

    /// `e^{-(l1+l2)t} q1 int_lo^hi xi / sqrt(a^2 - xi^2) exp(q1 sqrt(a^2 - xi^2)
    /// + q2 sqrt(b^2 - (r - xi)^2)) dxi`
    pub fn k1(&self, r: f64, lo: f64, hi: f64) -> Result<QuadResult> {
        let (q1, q2, b, lt) = (self.q1, self.q2, self.b, self.lt());
        self.single(lo, hi, self.a, |xi, root| {
            q1 * xi * (-lt + q1 * root + q2 * root_diff(b, r - xi)).exp()
        })
    }

    /// [`Setup::k1`] with the roles of the flights exchanged.
    pub fn k2(&self, r: f64, lo: f64, hi: f64) -> Result<QuadResult> {
        let (q1, q2, a, lt) = (self.q1, self.q2, self.a, self.lt());
        self.single(lo, hi, self.b, |zeta, root| {
            q2 * zeta * (-lt + q2 * root + q1 * root_diff(a, r - zeta)).exp()
        })
    }

    fn single<H>(&self, lo: f64, hi: f64, p: f64, h: H) -> Result<QuadResult>
    where
        H: Fn(f64, f64) -> f64,
    {
        let lo = lo.max(0.0);
        let hi = hi.min(p);
        if hi <= lo {
            return Ok(QuadResult::ZERO);
        }
        integrate_inv_sqrt(h, lo, hi, p, self.tol_1d)
    }

    /// `sum over pieces of int ds int dv angle(xi, zeta, r) f1(xi) f2(zeta)`,
    /// where `s` is the outer variable given by `outer`.
    pub fn double(
        &self,
        r: f64,
        outer: Outer,
        kernel: Kernel,
        pieces: &[Piece],
    ) -> Result<QuadResult> {
        let (outer_p, inner_p) = match outer {
            Outer::Second => (self.b, self.a),
            Outer::First => (self.a, self.b),
        };
        let (q_out, q_in) = match outer {
            Outer::Second => (self.q2, self.q1),
            Outer::First => (self.q1, self.q2),
        };
        let lt = self.lt();
        let angle = match kernel {
            Kernel::Strict => triangle_angle,
            Kernel::Saturating => triangle_angle_saturating,
        };
        let h = |s: Point, v: Point| {
            let th = angle(s.x, v.x, r);
            q_out * q_in * s.x * v.x * (-lt + q_out * s.root + q_in * v.root).exp() * th
        };

        let mut total = QuadResult::ZERO;
        for piece in pieces {
            let lo = piece.lo.max(0.0);
            let hi = piece.hi.min(outer_p);
            if hi <= lo {
                continue;
            }
            let rule = piece.inner;
            let inner = |s: f64| inner_breaks(rule, s, r, inner_p);
            total = total
                + nested(
                    h,
                    &[lo, hi],
                    Axis::inv_sqrt(outer_p),
                    inner,
                    Axis::inv_sqrt(inner_p),
                    self.tol_2d,
                )?;
        }
        Ok(total)
    }
}

fn inner_breaks(rule: Inner, s: f64, r: f64, top: f64) -> Breaks {
    let (lo, hi) = match rule {
        Inner::RMinusRPlus => (r - s, r + s),
        Inner::SMinusSPlus => (s - r, s + r),
        Inner::RMinusTop => (r - s, top),
        Inner::SMinusTop => (s - r, top),
        Inner::ZeroToSMinusR => (0.0, s - r),
        Inner::ZeroToRMinusS => (0.0, r - s),
        Inner::Full => return Breaks::with_interior(0.0, top, &[(r - s).abs(), r + s]),
    };
    Breaks::pair(lo.max(0.0), hi.min(top))
}

pub(crate) fn checked(v: f64, what: &str) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Internal(format!("{what} is not finite")))
    }
}
