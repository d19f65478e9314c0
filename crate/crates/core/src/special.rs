//! Power series for the modified Bessel function `I0` and the modified Struve
//! function `L0`. Arguments met by the marginal density are bounded by the
//! product of rate and time, so direct summation converges quickly.

use std::f64::consts::PI;

const MAX_TERMS: usize = 500;
const REL_STOP: f64 = 1e-16;

/// `I0(z) = sum_k (z/2)^(2k) / (k!)^2`
pub fn bessel_i0(z: f64) -> f64 {
    let q = 0.25 * z * z;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..MAX_TERMS {
        let kf = k as f64;
        term *= q / (kf * kf);
        if term < REL_STOP * sum {
            break;
        }
        sum += term;
    }
    sum
}

/// `L0(z) = sum_k (z/2)^(2k+1) / Gamma(k + 3/2)^2`
pub fn struve_l0(z: f64) -> f64 {
    let half = 0.5 * z;
    let q = half * half;
    // Gamma(3/2)^2 = pi / 4
    let mut term = half * 4.0 / PI;
    let mut sum = term;
    if term == 0.0 {
        return 0.0;
    }
    for k in 0..MAX_TERMS - 1 {
        let g = k as f64 + 1.5;
        term *= q / (g * g);
        if term.abs() < REL_STOP * sum.abs() {
            break;
        }
        sum += term;
    }
    sum
}
