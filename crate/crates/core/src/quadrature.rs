//! Adaptive Gauss–Kronrod integration for integrands with square-root type
//! endpoint behaviour, and nested (iterated) double integrals.
//!
//! Every interval is first mapped onto `v in [0, pi]` by
//! `x = a + (b - a) sin^2(v/2)`, which clusters nodes quadratically at both
//! ends. Integrands that vanish or blow up like `sqrt(x - a)` or
//! `1/sqrt(b - x)` become smooth functions of `v`. When an interval carries a
//! `1/sqrt(p^2 - x^2)` factor the map goes through `x = p sin u` first, so the
//! factor cancels against the Jacobian exactly, and nodes are packed only at
//! the ends not already handled that way. The 21-point Kronrod rule with
//! its embedded 10-point Gauss rule is then applied with adaptive bisection on
//! the worst panel.

use std::cell::Cell;
use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::PI;

use crate::error::{Error, Result};

pub const DEFAULT_TOL_1D: f64 = 1e-10;
pub const DEFAULT_TOL_2D: f64 = 1e-8;
pub const BUDGET_1D: u64 = 1_000_000;
pub const BUDGET_2D: u64 = 100_000_000;

/// Ratio between the tolerance handed to inner integrals and the outer one.
const INNER_TOL_RATIO: f64 = 0.1;
/// Panels narrower than this (in the mapped variable) are not split further.
const MIN_PANEL: f64 = 1e-13;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub abs_error: f64,
    pub evaluations: u64,
}

impl QuadResult {
    pub const ZERO: QuadResult = QuadResult {
        value: 0.0,
        abs_error: 0.0,
        evaluations: 0,
    };

    pub fn scaled(self, k: f64) -> QuadResult {
        QuadResult {
            value: k * self.value,
            abs_error: k.abs() * self.abs_error,
            evaluations: self.evaluations,
        }
    }
}

impl std::ops::Add for QuadResult {
    type Output = QuadResult;
    fn add(self, rhs: QuadResult) -> QuadResult {
        QuadResult {
            value: self.value + rhs.value,
            abs_error: self.abs_error + rhs.abs_error,
            evaluations: self.evaluations + rhs.evaluations,
        }
    }
}

impl std::ops::Sub for QuadResult {
    type Output = QuadResult;
    fn sub(self, rhs: QuadResult) -> QuadResult {
        self + rhs.scaled(-1.0)
    }
}

impl std::iter::Sum for QuadResult {
    fn sum<I: Iterator<Item = QuadResult>>(iter: I) -> QuadResult {
        iter.fold(QuadResult::ZERO, |a, b| a + b)
    }
}

/// Marks which ends of an interval sit on a `1/sqrt(p^2 - x^2)` singularity,
/// with `p = sqrt_scale`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SingularSpec {
    pub singular_left: bool,
    pub singular_right: bool,
    pub sqrt_scale: f64,
}

impl SingularSpec {
    pub const fn none() -> Self {
        Self {
            singular_left: false,
            singular_right: false,
            sqrt_scale: 0.0,
        }
    }

    pub const fn right(p: f64) -> Self {
        Self {
            singular_left: false,
            singular_right: true,
            sqrt_scale: p,
        }
    }

    pub const fn left(p: f64) -> Self {
        Self {
            singular_left: true,
            singular_right: false,
            sqrt_scale: p,
        }
    }

    pub const fn both(p: f64) -> Self {
        Self {
            singular_left: true,
            singular_right: true,
            sqrt_scale: p,
        }
    }

    fn is_singular(&self) -> bool {
        self.singular_left || self.singular_right
    }

    fn axis(&self, a: f64, b: f64) -> Result<Axis> {
        if !self.is_singular() {
            return Ok(Axis::plain());
        }
        let p = self.sqrt_scale;
        if !(p > 0.0 && p.is_finite()) {
            return Err(Error::Domain(format!(
                "sqrt_scale must be positive, got {p}"
            )));
        }
        let slack = 1e-12 * p;
        if a.abs() > p + slack || b.abs() > p + slack {
            return Err(Error::Domain(format!(
                "interval [{a}, {b}] with a singular end must lie in [-{p}, {p}]"
            )));
        }
        // Flagged ends are already smooth after the sine map; clustering
        // goes to the other end, where the integrand may still have a
        // square-root kink.
        let cluster = match (self.singular_left, self.singular_right) {
            (true, true) => Cluster::Neither,
            (true, false) => Cluster::Right,
            _ => Cluster::Left,
        };
        Ok(Axis::sine_times_root(p, cluster))
    }
}

/// A one-dimensional interval with its singularity description.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub a: f64,
    pub b: f64,
    pub spec: SingularSpec,
}

impl Interval {
    pub fn new(a: f64, b: f64, spec: SingularSpec) -> Self {
        Self { a, b, spec }
    }
}

/// A node handed to internal integrands: the abscissa and, on sine-mapped
/// axes, `sqrt(p^2 - x^2)` computed without cancellation.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Point {
    pub x: f64,
    pub root: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Weight {
    /// Integrate `f(x) dx`.
    Unit,
    /// Integrate `f(x) / sqrt(p^2 - x^2) dx`.
    InvSqrt,
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct Axis {
    weight: Weight,
    scale: Option<f64>,
    cluster: Cluster,
}

/// Where the mapped variable packs nodes together. Clustering at an end
/// turns `sqrt`-type behaviour there into a smooth function, but a caller
/// that recomputes `sqrt(p^2 - x^2)` from `x` loses digits at packed nodes
/// next to a singular end.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Cluster {
    Both,
    Left,
    Right,
    Neither,
}

impl Cluster {
    /// `(s, 1 - s, ds/dv)` for `v in [0, pi]`, each computed without
    /// cancellation.
    #[inline]
    fn eval(self, v: f64) -> (f64, f64, f64) {
        match self {
            Cluster::Both => {
                let (sh, ch) = (0.5 * v).sin_cos();
                (sh * sh, ch * ch, sh * ch)
            }
            Cluster::Left => {
                let q = (0.25 * v).sin();
                let (sh, ch) = (0.5 * v).sin_cos();
                (2.0 * q * q, ch, 0.5 * sh)
            }
            Cluster::Right => {
                let q = (0.25 * (PI - v)).sin();
                let (sh, ch) = (0.5 * v).sin_cos();
                (sh, 2.0 * q * q, 0.5 * ch)
            }
            Cluster::Neither => (v / PI, (PI - v) / PI, 1.0 / PI),
        }
    }
}

impl Axis {
    pub(crate) fn plain() -> Self {
        Self {
            weight: Weight::Unit,
            scale: None,
            cluster: Cluster::Both,
        }
    }

    fn sine_times_root(p: f64, cluster: Cluster) -> Self {
        Self {
            weight: Weight::Unit,
            scale: Some(p),
            cluster,
        }
    }

    /// Axis whose integrand carries an implicit `1/sqrt(p^2 - x^2)` factor.
    pub(crate) fn inv_sqrt(p: f64) -> Self {
        Self {
            weight: Weight::InvSqrt,
            scale: Some(p),
            cluster: Cluster::Both,
        }
    }

    fn map(&self, a: f64, b: f64) -> Map {
        match self.scale {
            None => Map::Linear { a, b },
            Some(p) => {
                let a = a.clamp(-p, p);
                let b = b.clamp(-p, p);
                let ra = ((p - a) * (p + a)).max(0.0).sqrt();
                let rb = ((p - b) * (p + b)).max(0.0).sqrt();
                let ua = (a / p).clamp(-1.0, 1.0).asin();
                let ub = (b / p).clamp(-1.0, 1.0).asin();
                Map::Sine {
                    a,
                    b,
                    ra,
                    rb,
                    width: ub - ua,
                    weight: self.weight,
                    cluster: self.cluster,
                }
            }
        }
    }
}

#[derive(Debug, Clone, Copy)]
enum Map {
    Linear {
        a: f64,
        b: f64,
    },
    Sine {
        a: f64,
        b: f64,
        ra: f64,
        rb: f64,
        width: f64,
        weight: Weight,
        cluster: Cluster,
    },
}

impl Map {
    /// Abscissa and integrand multiplier at mapped coordinate `v in (0, pi)`.
    #[inline]
    fn at(&self, v: f64) -> (Point, f64) {
        let cluster = match *self {
            Map::Linear { .. } => Cluster::Both,
            Map::Sine { cluster, .. } => cluster,
        };
        // s and c = 1 - s are both kept so either end is reached without
        // cancellation.
        let (s, c, dt) = cluster.eval(v);
        match *self {
            Map::Linear { a, b } => {
                let w = b - a;
                let x = if s < 0.5 { a + w * s } else { b - w * c };
                (Point { x, root: f64::NAN }, w * dt)
            }
            Map::Sine {
                a,
                b,
                ra,
                rb,
                width,
                weight,
                ..
            } => {
                let (x, root) = if s < 0.5 {
                    let (sd, cd) = (width * s).sin_cos();
                    (a * cd + ra * sd, ra * cd - a * sd)
                } else {
                    let (sd, cd) = (width * c).sin_cos();
                    (b * cd - rb * sd, rb * cd + b * sd)
                };
                let root = root.max(0.0);
                let du = width * dt;
                let factor = match weight {
                    Weight::Unit => root * du,
                    Weight::InvSqrt => du,
                };
                (Point { x, root }, factor)
            }
        }
    }
}

// 21-point Kronrod abscissae and weights with the embedded 10-point Gauss rule.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

fn rescale_error(err: f64, res_abs: f64, res_asc: f64) -> f64 {
    let mut scaled = err.abs();
    if res_asc != 0.0 && scaled != 0.0 {
        let scale = (200.0 * scaled / res_asc).powf(1.5);
        scaled = if scale < 1.0 {
            res_asc * scale
        } else {
            res_asc
        };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        scaled = scaled.max(50.0 * f64::EPSILON * res_abs);
    }
    scaled
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    lo: f64,
    hi: f64,
    value: f64,
    err: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err
            .total_cmp(&other.err)
            .then_with(|| other.lo.total_cmp(&self.lo))
    }
}

/// Applies the 21-point rule on `[lo, hi]`. The integrand returns a value and
/// an absolute error already attached to it (non-zero for nested integrals).
fn gk21<G>(g: &G, lo: f64, hi: f64) -> Result<Panel>
where
    G: Fn(f64) -> (f64, f64),
{
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let mut fv1 = [0.0; 10];
    let mut fv2 = [0.0; 10];

    let (fc, ec) = g(center);
    let mut res_k = WGK[10] * fc;
    let mut res_g = 0.0;
    let mut res_abs = res_k.abs();
    let mut carried = WGK[10] * ec;
    if !fc.is_finite() {
        return Err(non_finite(center));
    }

    for j in 0..10 {
        let dx = half * XGK[j];
        let (f1, e1) = g(center - dx);
        let (f2, e2) = g(center + dx);
        if !f1.is_finite() || !f2.is_finite() {
            return Err(non_finite(center));
        }
        fv1[j] = f1;
        fv2[j] = f2;
        let sum = f1 + f2;
        res_k += WGK[j] * sum;
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        carried += WGK[j] * (e1 + e2);
        if j % 2 == 1 {
            res_g += WG[j / 2] * sum;
        }
    }

    let mean = 0.5 * res_k;
    let mut res_asc = WGK[10] * (fc - mean).abs();
    for j in 0..10 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }

    let h = half.abs();
    let err = rescale_error((res_k - res_g) * half, res_abs * h, res_asc * h) + carried * h;
    Ok(Panel {
        lo,
        hi,
        value: res_k * half,
        err,
    })
}

fn non_finite(v: f64) -> Error {
    Error::Internal(format!("integrand is not finite near mapped abscissa {v}"))
}

struct Outcome {
    value: f64,
    abs_error: f64,
    converged: bool,
}

/// Adaptive bisection over the mapped variable `v in [0, pi]`.
fn adaptive<G>(
    g: &G,
    tol: f64,
    budget: u64,
    evals: &Cell<u64>,
    per_eval: &dyn Fn() -> u64,
) -> Result<Outcome>
where
    G: Fn(f64) -> (f64, f64),
{
    let first = gk21(g, 0.0, PI)?;
    evals.set(evals.get() + per_eval());
    let mut heap = BinaryHeap::new();
    let mut frozen: Vec<Panel> = Vec::new();
    heap.push(first);
    let mut value = first.value;
    let mut err = first.err;

    loop {
        if err <= tol * value.abs().max(1.0) {
            break;
        }
        if evals.get() >= budget {
            break;
        }
        let Some(worst) = heap.pop() else { break };
        let mid = 0.5 * (worst.lo + worst.hi);
        if worst.hi - worst.lo < MIN_PANEL {
            frozen.push(worst);
            continue;
        }
        let left = gk21(g, worst.lo, mid)?;
        let right = gk21(g, mid, worst.hi)?;
        evals.set(evals.get() + per_eval());
        value += left.value + right.value - worst.value;
        err += left.err + right.err - worst.err;
        heap.push(left);
        heap.push(right);
    }

    // Re-sum in position order so the result does not depend on float drift
    // in the running totals.
    let mut panels: Vec<Panel> = heap.into_vec();
    panels.extend(frozen);
    panels.sort_by(|a, b| a.lo.total_cmp(&b.lo));
    let value: f64 = panels.iter().map(|p| p.value).sum();
    let abs_error: f64 = panels.iter().map(|p| p.err).sum();
    Ok(Outcome {
        value,
        abs_error,
        converged: abs_error <= tol * value.abs().max(1.0),
    })
}

/// Integrates `f` over the consecutive pieces of `breaks` (sorted; empty or
/// reversed pieces are skipped). The tolerance is shared between pieces.
fn integrate_pieces<F>(
    f: &F,
    breaks: &[f64],
    axis: Axis,
    tol: f64,
    budget: u64,
    evals: &Cell<u64>,
    per_eval: &dyn Fn() -> u64,
) -> Result<Outcome>
where
    F: Fn(Point) -> (f64, f64),
{
    let pieces: Vec<(f64, f64)> = breaks
        .windows(2)
        .filter(|w| w[1] > w[0])
        .map(|w| (w[0], w[1]))
        .collect();
    let mut total = Outcome {
        value: 0.0,
        abs_error: 0.0,
        converged: true,
    };
    if pieces.is_empty() {
        return Ok(total);
    }
    let share = tol / pieces.len() as f64;
    for (a, b) in pieces {
        let map = axis.map(a, b);
        let g = |v: f64| {
            let (pt, factor) = map.at(v);
            let (val, e) = f(pt);
            (val * factor, e * factor.abs())
        };
        let out = adaptive(&g, share, budget, evals, per_eval)?;
        total.value += out.value;
        total.abs_error += out.abs_error;
        total.converged &= out.converged;
    }
    Ok(total)
}

fn finish(out: Outcome, tol: f64, evaluations: u64) -> Result<QuadResult> {
    if out.converged {
        Ok(QuadResult {
            value: out.value,
            abs_error: out.abs_error,
            evaluations,
        })
    } else {
        Err(Error::Convergence {
            estimate: out.value,
            abs_error: out.abs_error,
            tolerance: tol,
            evaluations,
        })
    }
}

fn check_tol(tol: f64) -> Result<()> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "tolerance must be positive, got {tol}"
        )))
    }
}

fn check_bounds(a: f64, b: f64) -> Result<()> {
    if a.is_finite() && b.is_finite() && a <= b {
        Ok(())
    } else {
        Err(Error::Domain(format!("need finite a <= b, got [{a}, {b}]")))
    }
}

/// Integrates `f` over `[a, b]`.
///
/// When `spec` flags a singular end, the substitution `x = p sin u` is applied
/// so that a `1/sqrt(p^2 - x^2)` factor in `f` is absorbed by the Jacobian.
/// Convergence is declared when the error estimate drops below
/// `tol * max(1, |value|)`.
pub fn integrate_1d<F>(f: F, a: f64, b: f64, spec: SingularSpec, tol: f64) -> Result<QuadResult>
where
    F: Fn(f64) -> f64,
{
    integrate_1d_with_breaks(f, &[a, b], spec, tol)
}

/// Like [`integrate_1d`] with interior breakpoints where the integrand has
/// kinks or jumps. `breaks` must be sorted and include both ends.
pub fn integrate_1d_with_breaks<F>(
    f: F,
    breaks: &[f64],
    spec: SingularSpec,
    tol: f64,
) -> Result<QuadResult>
where
    F: Fn(f64) -> f64,
{
    check_tol(tol)?;
    let (a, b) = match (breaks.first(), breaks.last()) {
        (Some(&a), Some(&b)) if breaks.len() >= 2 => (a, b),
        _ => return Err(Error::Domain("need at least two breakpoints".into())),
    };
    check_bounds(a, b)?;
    if breaks.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::Domain("breakpoints must be sorted".into()));
    }
    let axis = spec.axis(a, b)?;
    let evals = Cell::new(0);
    let out = integrate_pieces(
        &|p: Point| (f(p.x), 0.0),
        breaks,
        axis,
        tol,
        BUDGET_1D,
        &evals,
        &|| 21,
    )?;
    finish(out, tol, evals.get())
}

/// Integrates `h(x, r) / r` over `[a, b]` with `r = sqrt(p^2 - x^2)`, where
/// `[a, b]` lies inside `[-p, p]`. The weight is removed analytically, so `h`
/// only needs to be finite.
pub fn integrate_inv_sqrt<H>(h: H, a: f64, b: f64, p: f64, tol: f64) -> Result<QuadResult>
where
    H: Fn(f64, f64) -> f64,
{
    check_tol(tol)?;
    check_bounds(a, b)?;
    check_scale(a, b, p)?;
    let evals = Cell::new(0);
    let out = integrate_pieces(
        &|pt: Point| (h(pt.x, pt.root), 0.0),
        &[a, b],
        Axis::inv_sqrt(p),
        tol,
        BUDGET_1D,
        &evals,
        &|| 21,
    )?;
    finish(out, tol, evals.get())
}

fn check_scale(a: f64, b: f64, p: f64) -> Result<()> {
    if !(p > 0.0 && p.is_finite()) {
        return Err(Error::Domain(format!("scale must be positive, got {p}")));
    }
    let slack = 1e-12 * p;
    if a < -p - slack || b > p + slack {
        return Err(Error::Domain(format!("[{a}, {b}] not inside [-{p}, {p}]")));
    }
    Ok(())
}

/// Iterated integral `int_outer dx int_{lo(x)}^{hi(x)} f(x, y) dy`.
///
/// Inner integrals run at a tenth of `tol`; their error estimates are
/// propagated through the outer rule and added to the outer estimate.
pub fn integrate_2d_region<F, B>(
    f: F,
    outer: Interval,
    inner_bounds: B,
    inner_spec: SingularSpec,
    tol: f64,
) -> Result<QuadResult>
where
    F: Fn(f64, f64) -> f64,
    B: Fn(f64) -> (f64, f64),
{
    check_tol(tol)?;
    check_bounds(outer.a, outer.b)?;
    let outer_axis = outer.spec.axis(outer.a, outer.b)?;
    // Inner ranges are clipped to [-p, p] below, so only p is checked here.
    let p = inner_spec.sqrt_scale;
    let inner_axis = inner_spec.axis(-p.abs(), p.abs())?;
    nested(
        |x: Point, y: Point| f(x.x, y.x),
        &[outer.a, outer.b],
        outer_axis,
        |x| {
            let (lo, hi) = inner_bounds(x);
            let (lo, hi) = match inner_axis.scale {
                Some(p) => (lo.max(-p), hi.min(p)),
                None => (lo, hi),
            };
            Breaks::pair(lo, hi)
        },
        inner_axis,
        tol,
    )
}

/// Small sorted list of breakpoints for an inner integral.
#[derive(Debug, Clone, Default)]
pub(crate) struct Breaks {
    pts: [f64; 6],
    len: usize,
}

impl Breaks {
    pub(crate) fn pair(lo: f64, hi: f64) -> Self {
        let mut b = Self::default();
        if hi > lo {
            b.push(lo);
            b.push(hi);
        }
        b
    }

    /// Breakpoints `lo < ... < hi` keeping only interior points strictly inside.
    pub(crate) fn with_interior(lo: f64, hi: f64, interior: &[f64]) -> Self {
        let mut b = Self::default();
        if hi <= lo {
            return b;
        }
        b.push(lo);
        let mut inner: [f64; 4] = [f64::NAN; 4];
        let mut n = 0;
        for &x in interior {
            if x > lo && x < hi && n < 4 {
                inner[n] = x;
                n += 1;
            }
        }
        let inner = &mut inner[..n];
        inner.sort_by(f64::total_cmp);
        for &x in inner.iter() {
            b.push(x);
        }
        b.push(hi);
        b
    }

    fn push(&mut self, x: f64) {
        self.pts[self.len] = x;
        self.len += 1;
    }

    pub(crate) fn as_slice(&self) -> &[f64] {
        &self.pts[..self.len]
    }
}

/// Nested adaptive quadrature. `outer_breaks` split the outer range; the
/// `inner` closure returns the inner breakpoints for a given outer abscissa.
pub(crate) fn nested<H, B>(
    h: H,
    outer_breaks: &[f64],
    outer_axis: Axis,
    inner: B,
    inner_axis: Axis,
    tol: f64,
) -> Result<QuadResult>
where
    H: Fn(Point, Point) -> f64,
    B: Fn(f64) -> Breaks,
{
    check_tol(tol)?;
    let inner_tol = tol * INNER_TOL_RATIO;
    let evals = Cell::new(0u64);
    let inner_evals = Cell::new(0u64);
    let failure: Cell<Option<Error>> = Cell::new(None);

    let outer_f = |xo: Point| -> (f64, f64) {
        let breaks = inner(xo.x);
        let g = |yi: Point| (h(xo, yi), 0.0);
        let local = Cell::new(0u64);
        match integrate_pieces(
            &g,
            breaks.as_slice(),
            inner_axis,
            inner_tol,
            BUDGET_1D,
            &local,
            &|| 21,
        ) {
            Ok(out) => {
                inner_evals.set(inner_evals.get() + local.get());
                (out.value, out.abs_error)
            }
            Err(e) => {
                failure.set(Some(e));
                (f64::NAN, 0.0)
            }
        }
    };

    // Each outer panel evaluation is charged with the inner work done so far.
    let charge = || {
        let spent = inner_evals.replace(0);
        spent + 21
    };
    let out = integrate_pieces(
        &outer_f,
        outer_breaks,
        outer_axis,
        tol,
        BUDGET_2D,
        &evals,
        &charge,
    );
    if let Some(e) = failure.take() {
        return Err(e);
    }
    finish(out?, tol, evals.get())
}
