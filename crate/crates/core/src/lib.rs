//! Distance law between two independent planar Markov random flights.
//!
//! A flight moves at constant speed `c` and redraws its direction uniformly at
//! the events of a Poisson process of rate `lambda`. This crate evaluates the
//! distribution function of the Euclidean distance between two such flights
//! started at the origin, the single-flight laws it is built from, and a Monte
//! Carlo simulator used to check all of them.

pub mod angles;
pub mod error;
pub mod law;
pub mod mc;
pub mod model;
pub mod quadrature;
pub mod radial;
pub mod special;

pub use error::{Error, Result};
pub use law::{
    classify, evaluate_grid, i1, i2, joint_00, joint_01, joint_10, phi, phi_components, CdfValue,
    DistanceLaw, JointComponents, Regime, RegimeTag, Tolerances,
};
pub use mc::{
    empirical_acute_angle, empirical_distance_cdf, empirical_marginal, simulate_flight,
    EmpiricalCdf, FlightState,
};
pub use model::{FlightParams, PairParams, SpeedClass};
pub use quadrature::{QuadResult, SingularSpec};
pub use radial::{marginal_density, radial_cdf, radial_density_ac, singular_mass, RadialLaw};
