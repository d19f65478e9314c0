//! Piecewise structure of the distance law in `r` for fixed `t`.

use std::fmt;

use crate::error::{require_time, Error, Result};
use crate::model::{PairParams, SpeedClass};

/// Which formula of the distance law applies at a given radius.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RegimeTag {
    Zero,
    G,
    H1,
    H2,
    Q,
    U,
    V,
    W,
    One,
}

impl RegimeTag {
    pub const ALL: [RegimeTag; 9] = [
        RegimeTag::Zero,
        RegimeTag::G,
        RegimeTag::H1,
        RegimeTag::H2,
        RegimeTag::Q,
        RegimeTag::U,
        RegimeTag::V,
        RegimeTag::W,
        RegimeTag::One,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            RegimeTag::Zero => "Zero",
            RegimeTag::G => "G",
            RegimeTag::H1 => "H1",
            RegimeTag::H2 => "H2",
            RegimeTag::Q => "Q",
            RegimeTag::U => "U",
            RegimeTag::V => "V",
            RegimeTag::W => "W",
            RegimeTag::One => "One",
        }
    }
}

impl fmt::Display for RegimeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for RegimeTag {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        RegimeTag::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown regime {s:?}")))
    }
}

/// The regime at one radius together with the junction points of the
/// partition it belongs to.
#[derive(Debug, Clone, PartialEq)]
pub struct Regime {
    pub tag: RegimeTag,
    /// `min((c1 - c2) t, c2 t)`
    pub m: f64,
    /// `max((c1 - c2) t, c2 t)`
    pub big_m: f64,
    /// Branch boundaries in increasing order, starting at 0 and ending at
    /// `(c1 + c2) t`. Each branch owns the interval `(left, right]`.
    pub junctions: Vec<f64>,
}

impl Regime {
    pub fn locate(pair: &PairParams, r: f64, t: f64) -> Result<Regime> {
        let (m, big_m, junctions) = partition(pair, t)?;
        Ok(Regime {
            tag: tag_at(pair, &junctions, r)?,
            m,
            big_m,
            junctions,
        })
    }
}

pub fn classify(pair: &PairParams, r: f64, t: f64) -> Result<RegimeTag> {
    let (_, _, junctions) = partition(pair, t)?;
    tag_at(pair, &junctions, r)
}

/// `(m, M, junctions)` for the pair at time `t`.
pub(crate) fn partition(pair: &PairParams, t: f64) -> Result<(f64, f64, Vec<f64>)> {
    require_time(t)?;
    pair.check_class()?;
    let a = pair.first().reach(t);
    let b = pair.second().reach(t);
    Ok(match pair.speed_class() {
        SpeedClass::Equal => (0.0, a, vec![0.0, a, a + b]),
        SpeedClass::Double => (b, b, vec![0.0, b, b, a, a + b]),
        _ => {
            let (m, big_m) = if a - b <= b { (a - b, b) } else { (b, a - b) };
            (m, big_m, vec![0.0, m, big_m, a, a + b])
        }
    })
}

fn tag_at(pair: &PairParams, j: &[f64], r: f64) -> Result<RegimeTag> {
    if r.is_nan() {
        return Err(Error::Domain("radius is NaN".into()));
    }
    let top = *j.last().expect("partition is never empty");
    if r <= 0.0 {
        return Ok(RegimeTag::Zero);
    }
    if r > top {
        return Ok(RegimeTag::One);
    }
    Ok(match pair.speed_class() {
        SpeedClass::Equal => {
            if r <= j[1] {
                RegimeTag::V
            } else {
                RegimeTag::W
            }
        }
        class => {
            if r <= j[1] {
                RegimeTag::G
            } else if r <= j[2] {
                match class {
                    SpeedClass::AboveDouble => RegimeTag::H1,
                    SpeedClass::BelowDouble => RegimeTag::H2,
                    // (m, M] is empty in the double-speed class.
                    _ => RegimeTag::Q,
                }
            } else if r <= j[3] {
                RegimeTag::Q
            } else {
                RegimeTag::U
            }
        }
    })
}
