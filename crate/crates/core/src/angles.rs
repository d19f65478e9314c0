//! Laws of the direction angle of a single flight and of the angle between
//! two independent flights.

use std::f64::consts::PI;

/// CDF of `phi = |u - v|` for independent uniform angles `u, v` on
/// `[0, 2pi)`. The law is triangular on `[0, 2pi]`.
pub fn angle_diff_cdf(z: f64) -> f64 {
    if z <= 0.0 {
        0.0
    } else if z <= 2.0 * PI {
        (4.0 * PI * z - z * z) / (4.0 * PI * PI)
    } else {
        1.0
    }
}

/// Density of [`angle_diff_cdf`] on `[0, 2pi)`, zero elsewhere.
pub fn angle_diff_density(z: f64) -> f64 {
    if (0.0..2.0 * PI).contains(&z) {
        1.0 / PI - z / (2.0 * PI * PI)
    } else {
        0.0
    }
}

/// CDF of `cos(phi)`.
pub fn cos_angle_cdf(z: f64) -> f64 {
    if z <= -1.0 {
        0.0
    } else if z <= 1.0 {
        1.0 - z.acos() / PI
    } else {
        1.0
    }
}

/// `P(cos(phi) >= z)`, the complement of [`cos_angle_cdf`].
pub fn cos_angle_tail(z: f64) -> f64 {
    if z <= -1.0 {
        1.0
    } else if z <= 1.0 {
        z.acos() / PI
    } else {
        0.0
    }
}

/// The acute angle `arccos(cos(phi))` is uniform on `(0, pi)`.
pub fn acute_angle_cdf(z: f64) -> f64 {
    if z <= 0.0 {
        0.0
    } else if z <= PI {
        z / PI
    } else {
        1.0
    }
}
