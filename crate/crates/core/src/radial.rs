//! Single-flight laws: the atom on the circle of radius `ct`, the radial
//! distribution and the marginal density of one coordinate.

use std::f64::consts::PI;

use crate::error::{require_time, Error, Result};
use crate::model::FlightParams;
use crate::special::{bessel_i0, struve_l0};

/// Probability that no direction change happened by time `t`, which puts
/// the particle exactly on the circle of radius `ct`.
pub fn singular_mass(p: &FlightParams, t: f64) -> Result<f64> {
    require_time(t)?;
    Ok((-p.rate() * t).exp())
}

/// `P(R(t) < r)` for the distance `R(t)` of one flight from its start.
/// At `r = ct` the value excludes the atom on the circle.
pub fn radial_cdf(p: &FlightParams, r: f64, t: f64) -> Result<f64> {
    require_time(t)?;
    let ct = p.reach(t);
    Ok(if r <= 0.0 {
        0.0
    } else if r <= ct {
        let q = p.rate() / p.speed();
        -(-p.rate() * t + q * root_diff(ct, r)).exp_m1()
    } else {
        1.0
    })
}

/// Density of the absolutely continuous part of `R(t)` on `(0, ct)`.
pub fn radial_density_ac(p: &FlightParams, r: f64, t: f64) -> Result<f64> {
    require_time(t)?;
    let ct = p.reach(t);
    if !(r > 0.0 && r < ct) {
        return Err(Error::Domain(format!("radius {r} outside (0, {ct})")));
    }
    let q = p.rate() / p.speed();
    let s = root_diff(ct, r);
    Ok(q * r / s * (-p.rate() * t + q * s).exp())
}

/// Density of one coordinate `X(t)` on `(-ct, ct)`.
pub fn marginal_density(p: &FlightParams, x: f64, t: f64) -> Result<f64> {
    require_time(t)?;
    let ct = p.reach(t);
    if x.is_nan() || x.abs() >= ct {
        return Err(Error::Domain(format!(
            "coordinate {x} outside (-{ct}, {ct})"
        )));
    }
    let decay = (-p.rate() * t).exp();
    let s = root_diff(ct, x);
    let z = p.rate() / p.speed() * s;
    Ok(decay / (PI * s) + p.rate() * decay / (2.0 * p.speed()) * (bessel_i0(z) + struve_l0(z)))
}

/// `sqrt(a^2 - b^2)` without cancellation near `|b| = a`.
#[inline]
pub(crate) fn root_diff(a: f64, b: f64) -> f64 {
    ((a - b) * (a + b)).max(0.0).sqrt()
}

/// The law of `R(t)` for fixed parameters and time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialLaw {
    params: FlightParams,
    horizon: f64,
    singular_mass: f64,
}

impl RadialLaw {
    pub fn new(params: FlightParams, t: f64) -> Result<Self> {
        Ok(Self {
            params,
            horizon: t,
            singular_mass: singular_mass(&params, t)?,
        })
    }

    pub fn params(&self) -> FlightParams {
        self.params
    }

    pub fn horizon(&self) -> f64 {
        self.horizon
    }

    pub fn singular_mass(&self) -> f64 {
        self.singular_mass
    }

    /// Open support `(0, ct)` of the absolutely continuous part.
    pub fn ac_support(&self) -> (f64, f64) {
        (0.0, self.params.reach(self.horizon))
    }

    pub fn cdf(&self, r: f64) -> f64 {
        radial_cdf(&self.params, r, self.horizon).expect("horizon checked at construction")
    }

    pub fn density_ac(&self, r: f64) -> Result<f64> {
        radial_density_ac(&self.params, r, self.horizon)
    }
}
