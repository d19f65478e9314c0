//! Distribution function of the distance between two flights.

mod branches;
mod components;
mod kernels;
mod regime;

use rayon::prelude::*;

use crate::error::{require_time, Error, Result};
use crate::model::PairParams;
use crate::quadrature::{QuadResult, DEFAULT_TOL_1D, DEFAULT_TOL_2D};
use kernels::Setup;

pub use regime::{classify, Regime, RegimeTag};

/// Quadrature tolerances used for single and double integrals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub one_d: f64,
    pub two_d: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            one_d: DEFAULT_TOL_1D,
            two_d: DEFAULT_TOL_2D,
        }
    }
}

/// A value of the distribution function with its quadrature error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CdfValue {
    /// Clamped to `[0, 1]`.
    pub value: f64,
    pub abs_error: f64,
    pub regime: RegimeTag,
    /// Value before clamping.
    pub raw: f64,
    /// False when `raw` left `[0, 1]` by more than `abs_error`.
    pub consistent: bool,
    pub evaluations: u64,
}

impl CdfValue {
    fn from_quad(q: QuadResult, regime: RegimeTag) -> Self {
        let raw = q.value;
        let consistent = raw >= -q.abs_error && raw <= 1.0 + q.abs_error;
        Self {
            value: raw.clamp(0.0, 1.0),
            abs_error: q.abs_error,
            regime,
            raw,
            consistent,
            evaluations: q.evaluations,
        }
    }
}

/// `P(rho < r)` split by which flights have left their first segment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JointComponents {
    /// Neither flight changed direction.
    pub p00: QuadResult,
    /// Only the first flight changed direction.
    pub p10: QuadResult,
    /// Only the second flight changed direction.
    pub p01: QuadResult,
    /// Both flights changed direction.
    pub p11: QuadResult,
}

impl JointComponents {
    pub fn sum(&self) -> QuadResult {
        self.p00 + self.p10 + self.p01 + self.p11
    }
}

/// Distance law of a pair with fixed quadrature tolerances.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistanceLaw {
    pair: PairParams,
    tol: Tolerances,
}

impl DistanceLaw {
    pub fn new(pair: PairParams) -> Self {
        Self::with_tolerances(pair, Tolerances::default())
    }

    pub fn with_tolerances(pair: PairParams, tol: Tolerances) -> Self {
        Self { pair, tol }
    }

    pub fn pair(&self) -> &PairParams {
        &self.pair
    }

    pub fn tolerances(&self) -> Tolerances {
        self.tol
    }

    fn setup(&self, t: f64) -> Result<Setup> {
        require_time(t)?;
        for (name, v) in [("one_d", self.tol.one_d), ("two_d", self.tol.two_d)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidParameter(format!(
                    "tolerance {name} must be positive, got {v}"
                )));
            }
        }
        Ok(Setup::new(&self.pair, t, self.tol.one_d, self.tol.two_d))
    }

    pub fn regime(&self, r: f64, t: f64) -> Result<Regime> {
        Regime::locate(&self.pair, r, t)
    }

    /// `P(rho(t) < r)` from the branch formula that owns `r`.
    pub fn phi(&self, r: f64, t: f64) -> Result<CdfValue> {
        let tag = classify(&self.pair, r, t)?;
        let s = self.setup(t)?;
        let q = branches::branch(&s, tag, r)?;
        Ok(CdfValue::from_quad(q, tag))
    }

    pub fn components(&self, r: f64, t: f64) -> Result<JointComponents> {
        let s = self.setup(t)?;
        let i1 = components::i1(&s, r)?;
        let i2 = components::i2(&s, r)?;
        Ok(JointComponents {
            p00: QuadResult {
                value: components::joint_00(&s, r)?,
                ..QuadResult::ZERO
            },
            p10: components::joint_10(&s, r)?,
            p01: components::joint_01(&s, r)?,
            p11: i1 + i2.scaled(1.0 / std::f64::consts::PI),
        })
    }

    pub fn joint_00(&self, r: f64, t: f64) -> Result<f64> {
        components::joint_00(&self.setup(t)?, r)
    }

    pub fn joint_10(&self, r: f64, t: f64) -> Result<QuadResult> {
        components::joint_10(&self.setup(t)?, r)
    }

    pub fn joint_01(&self, r: f64, t: f64) -> Result<QuadResult> {
        components::joint_01(&self.setup(t)?, r)
    }

    pub fn i1(&self, r: f64, t: f64) -> Result<QuadResult> {
        components::i1(&self.setup(t)?, r)
    }

    pub fn i2(&self, r: f64, t: f64) -> Result<QuadResult> {
        components::i2(&self.setup(t)?, r)
    }

    /// Evaluates `phi` at every radius in parallel; results keep input order.
    pub fn grid(&self, rs: &[f64], t: f64) -> Vec<Result<CdfValue>> {
        rs.par_iter().map(|&r| self.phi(r, t)).collect()
    }
}

pub fn phi(pair: &PairParams, r: f64, t: f64) -> Result<CdfValue> {
    DistanceLaw::new(*pair).phi(r, t)
}

pub fn phi_components(pair: &PairParams, r: f64, t: f64) -> Result<JointComponents> {
    DistanceLaw::new(*pair).components(r, t)
}

pub fn joint_00(pair: &PairParams, r: f64, t: f64) -> Result<f64> {
    DistanceLaw::new(*pair).joint_00(r, t)
}

pub fn joint_10(pair: &PairParams, r: f64, t: f64) -> Result<QuadResult> {
    DistanceLaw::new(*pair).joint_10(r, t)
}

pub fn joint_01(pair: &PairParams, r: f64, t: f64) -> Result<QuadResult> {
    DistanceLaw::new(*pair).joint_01(r, t)
}

pub fn i1(pair: &PairParams, r: f64, t: f64) -> Result<QuadResult> {
    DistanceLaw::new(*pair).i1(r, t)
}

pub fn i2(pair: &PairParams, r: f64, t: f64) -> Result<QuadResult> {
    DistanceLaw::new(*pair).i2(r, t)
}

pub fn evaluate_grid(law: &DistanceLaw, rs: &[f64], t: f64) -> Vec<Result<CdfValue>> {
    law.grid(rs, t)
}
