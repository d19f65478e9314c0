//! Parameter types for one flight and for an ordered pair of flights.

use crate::error::{Error, Result};

/// Relative tolerance under which two speeds (or a speed and twice another)
/// are treated as equal when choosing the branch structure of the law.
pub const SPEED_EQUALITY_TOL: f64 = 1e-12;

/// Speed and Poisson switching rate of one planar random flight.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlightParams {
    speed: f64,
    rate: f64,
}

impl FlightParams {
    pub fn new(speed: f64, rate: f64) -> Result<Self> {
        if !(speed > 0.0 && speed.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "speed must be positive and finite, got {speed}"
            )));
        }
        if !(rate > 0.0 && rate.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "rate must be positive and finite, got {rate}"
            )));
        }
        Ok(Self { speed, rate })
    }

    #[inline]
    pub fn speed(&self) -> f64 {
        self.speed
    }

    #[inline]
    pub fn rate(&self) -> f64 {
        self.rate
    }

    /// Radius of the disc reachable by time `t`.
    #[inline]
    pub fn reach(&self, t: f64) -> f64 {
        self.speed * t
    }
}

/// How the two speeds of a pair relate to each other. The distance law has a
/// different piecewise structure in each class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SpeedClass {
    /// `c1 > 2 c2`
    AboveDouble,
    /// `c2 < c1 < 2 c2`
    BelowDouble,
    /// `c1 = 2 c2`
    Double,
    /// `c1 = c2`
    Equal,
}

impl SpeedClass {
    pub fn classify(c1: f64, c2: f64) -> Self {
        let scale = c1.max(c2);
        if (c1 - c2).abs() <= SPEED_EQUALITY_TOL * scale {
            SpeedClass::Equal
        } else if (c1 - 2.0 * c2).abs() <= SPEED_EQUALITY_TOL * c1.max(2.0 * c2) {
            SpeedClass::Double
        } else if c1 > 2.0 * c2 {
            SpeedClass::AboveDouble
        } else {
            SpeedClass::BelowDouble
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            SpeedClass::AboveDouble => "above-double",
            SpeedClass::BelowDouble => "below-double",
            SpeedClass::Double => "double",
            SpeedClass::Equal => "equal",
        }
    }
}

/// Two flights ordered so that the first is at least as fast as the second.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairParams {
    first: FlightParams,
    second: FlightParams,
    speed_class: SpeedClass,
}

impl PairParams {
    /// Builds a pair, swapping the inputs if needed so that `c1 >= c2`.
    /// The distance between the flights does not depend on the labelling.
    pub fn new(a: FlightParams, b: FlightParams) -> Self {
        let (first, second) = if a.speed >= b.speed { (a, b) } else { (b, a) };
        Self {
            first,
            second,
            speed_class: SpeedClass::classify(first.speed, second.speed),
        }
    }

    pub fn from_values(c1: f64, lambda1: f64, c2: f64, lambda2: f64) -> Result<Self> {
        Ok(Self::new(
            FlightParams::new(c1, lambda1)?,
            FlightParams::new(c2, lambda2)?,
        ))
    }

    #[inline]
    pub fn first(&self) -> FlightParams {
        self.first
    }

    #[inline]
    pub fn second(&self) -> FlightParams {
        self.second
    }

    #[inline]
    pub fn speed_class(&self) -> SpeedClass {
        self.speed_class
    }

    /// Upper end `(c1 + c2) t` of the support of the distance.
    pub fn max_distance(&self, t: f64) -> f64 {
        (self.first.speed + self.second.speed) * t
    }

    pub(crate) fn check_class(&self) -> Result<()> {
        let expected = SpeedClass::classify(self.first.speed, self.second.speed);
        if expected == self.speed_class && self.first.speed >= self.second.speed {
            Ok(())
        } else {
            Err(Error::Internal(format!(
                "speed class {:?} inconsistent with speeds ({}, {})",
                self.speed_class, self.first.speed, self.second.speed
            )))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_values() {
        assert!(FlightParams::new(0.0, 1.0).is_err());
        assert!(FlightParams::new(1.0, -1.0).is_err());
        assert!(FlightParams::new(f64::INFINITY, 1.0).is_err());
        assert!(FlightParams::new(1.0, f64::NAN).is_err());
    }

    #[test]
    fn pair_orders_by_speed() {
        let slow = FlightParams::new(1.0, 2.0).unwrap();
        let fast = FlightParams::new(3.0, 0.5).unwrap();
        let pair = PairParams::new(slow, fast);
        assert_eq!(pair.first(), fast);
        assert_eq!(pair.second(), slow);
        assert_eq!(pair.speed_class(), SpeedClass::AboveDouble);
    }

    #[test]
    fn speed_classes() {
        assert_eq!(SpeedClass::classify(3.0, 1.0), SpeedClass::AboveDouble);
        assert_eq!(SpeedClass::classify(1.5, 1.0), SpeedClass::BelowDouble);
        assert_eq!(SpeedClass::classify(2.0, 1.0), SpeedClass::Double);
        assert_eq!(SpeedClass::classify(2.0 + 1e-13, 1.0), SpeedClass::Double);
        assert_eq!(SpeedClass::classify(1.0, 1.0), SpeedClass::Equal);
        assert_eq!(SpeedClass::classify(1.0 + 5e-13, 1.0), SpeedClass::Equal);
        assert_eq!(
            SpeedClass::classify(1.0 + 1e-9, 1.0),
            SpeedClass::BelowDouble
        );
    }
}
