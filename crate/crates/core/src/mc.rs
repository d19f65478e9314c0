//! Direct simulation of planar random flights.
//!
//! Draws are generated in fixed-size chunks; chunk `k` uses the ChaCha8
//! stream `k` of the master seed. The sample sequence therefore depends only
//! on `(seed, n)`, not on how many threads rayon happens to use.

use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp};
use rayon::prelude::*;

use crate::error::{require_time, Error, Result};
use crate::model::{FlightParams, PairParams};

pub const CHUNK: usize = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlightState {
    pub position: [f64; 2],
    pub t: f64,
    /// Number of direction changes in `(0, t)`.
    pub events: u32,
}

impl FlightState {
    pub fn radius(&self) -> f64 {
        self.position[0].hypot(self.position[1])
    }
}

/// One flight up to time `t`: exponential waiting times between direction
/// changes, a fresh uniform direction after each change.
pub fn simulate_flight<R: Rng + ?Sized>(
    p: &FlightParams,
    t: f64,
    rng: &mut R,
) -> Result<FlightState> {
    require_time(t)?;
    let wait = Exp::new(p.rate()).map_err(|e| Error::InvalidParameter(e.to_string()))?;
    Ok(flight(p.speed(), &wait, t, rng))
}

#[inline]
fn flight<R: Rng + ?Sized>(c: f64, wait: &Exp<f64>, t: f64, rng: &mut R) -> FlightState {
    let mut pos = [0.0, 0.0];
    let mut left = t;
    let mut events = 0;
    loop {
        let (s, co) = (rng.random::<f64>() * TAU).sin_cos();
        let dt = wait.sample(rng);
        if dt >= left {
            pos[0] += c * left * co;
            pos[1] += c * left * s;
            break;
        }
        pos[0] += c * dt * co;
        pos[1] += c * dt * s;
        left -= dt;
        events += 1;
    }
    FlightState {
        position: pos,
        t,
        events,
    }
}

fn chunked<T, F>(n: usize, seed: u64, draw: F) -> Vec<T>
where
    T: Send,
    F: Fn(&mut ChaCha8Rng) -> T + Sync,
{
    let chunks = n.div_ceil(CHUNK);
    let parts: Vec<Vec<T>> = (0..chunks)
        .into_par_iter()
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(k as u64);
            let len = CHUNK.min(n - k * CHUNK);
            (0..len).map(|_| draw(&mut rng)).collect()
        })
        .collect();
    parts.into_iter().flatten().collect()
}

fn require_n(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::InvalidParameter(
            "sample count must be at least 1".into(),
        ))
    } else {
        Ok(())
    }
}

/// `n` independent flights, in draw order.
pub fn sample_flights(p: &FlightParams, t: f64, n: usize, seed: u64) -> Result<Vec<FlightState>> {
    require_time(t)?;
    require_n(n)?;
    let wait = Exp::new(p.rate()).map_err(|e| Error::InvalidParameter(e.to_string()))?;
    Ok(chunked(n, seed, |rng| flight(p.speed(), &wait, t, rng)))
}

/// Pairs of independent flights, in draw order.
pub fn sample_pairs(
    pair: &PairParams,
    t: f64,
    n: usize,
    seed: u64,
) -> Result<Vec<(FlightState, FlightState)>> {
    require_time(t)?;
    require_n(n)?;
    let (f, s) = (pair.first(), pair.second());
    let w1 = Exp::new(f.rate()).map_err(|e| Error::InvalidParameter(e.to_string()))?;
    let w2 = Exp::new(s.rate()).map_err(|e| Error::InvalidParameter(e.to_string()))?;
    Ok(chunked(n, seed, |rng| {
        let z1 = flight(f.speed(), &w1, t, rng);
        let z2 = flight(s.speed(), &w2, t, rng);
        (z1, z2)
    }))
}

/// Distances between the two flights, in draw order.
pub fn sample_distances(pair: &PairParams, t: f64, n: usize, seed: u64) -> Result<Vec<f64>> {
    Ok(sample_pairs(pair, t, n, seed)?
        .into_iter()
        .map(|(z1, z2)| (z1.position[0] - z2.position[0]).hypot(z1.position[1] - z2.position[1]))
        .collect())
}

pub fn empirical_distance_cdf(
    pair: &PairParams,
    t: f64,
    n: usize,
    seed: u64,
) -> Result<EmpiricalCdf> {
    Ok(EmpiricalCdf::new(sample_distances(pair, t, n, seed)?, seed))
}

/// Empirical law of the first coordinate `X(t)` of one flight.
pub fn empirical_marginal(p: &FlightParams, t: f64, n: usize, seed: u64) -> Result<EmpiricalCdf> {
    let xs = sample_flights(p, t, n, seed)?
        .into_iter()
        .map(|f| f.position[0])
        .collect();
    Ok(EmpiricalCdf::new(xs, seed))
}

/// Empirical law of the angle in `[0, pi]` between the position vectors of
/// the two flights.
pub fn empirical_acute_angle(
    pair: &PairParams,
    t: f64,
    n: usize,
    seed: u64,
) -> Result<EmpiricalCdf> {
    let angles = sample_pairs(pair, t, n, seed)?
        .into_iter()
        .map(|(z1, z2)| {
            let [x1, y1] = z1.position;
            let [x2, y2] = z2.position;
            (x1 * y2 - y1 * x2).atan2(x1 * x2 + y1 * y2).abs()
        })
        .collect();
    Ok(EmpiricalCdf::new(angles, seed))
}

/// Lag-1 sample autocorrelation.
pub fn lag1_autocorrelation(xs: &[f64]) -> f64 {
    let n = xs.len();
    if n < 2 {
        return 0.0;
    }
    let mean = xs.iter().sum::<f64>() / n as f64;
    let var: f64 = xs.iter().map(|x| (x - mean).powi(2)).sum();
    if var == 0.0 {
        return 0.0;
    }
    let cov: f64 = xs.windows(2).map(|w| (w[0] - mean) * (w[1] - mean)).sum();
    cov / var
}

/// Sorted sample with the usual step-function CDF.
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalCdf {
    samples: Vec<f64>,
    seed: u64,
}

impl EmpiricalCdf {
    pub fn new(mut samples: Vec<f64>, seed: u64) -> Self {
        samples.sort_by(f64::total_cmp);
        Self { samples, seed }
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn n(&self) -> usize {
        self.samples.len()
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Fraction of samples strictly below `x`.
    pub fn eval(&self, x: f64) -> f64 {
        self.samples.partition_point(|&s| s < x) as f64 / self.n() as f64
    }

    /// Dvoretzky–Kiefer–Wolfowitz band half-width at level `alpha`.
    pub fn dkw_half_width(&self, alpha: f64) -> f64 {
        dkw_half_width(self.n(), alpha)
    }

    /// Exact Kolmogorov distance to a continuous CDF.
    pub fn ks_distance<F: Fn(f64) -> f64>(&self, cdf: F) -> f64 {
        let n = self.n() as f64;
        self.samples
            .iter()
            .enumerate()
            .map(|(i, &x)| {
                let f = cdf(x);
                (f - i as f64 / n).abs().max(((i + 1) as f64 / n - f).abs())
            })
            .fold(0.0, f64::max)
    }

    pub fn mean(&self) -> f64 {
        self.samples.iter().sum::<f64>() / self.n() as f64
    }

    pub fn std_dev(&self) -> f64 {
        let m = self.mean();
        let n = self.n() as f64;
        (self.samples.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (n - 1.0).max(1.0)).sqrt()
    }
}

pub fn dkw_half_width(n: usize, alpha: f64) -> f64 {
    ((2.0 / alpha).ln() / (2.0 * n as f64)).sqrt()
}
