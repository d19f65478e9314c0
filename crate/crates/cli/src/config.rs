//! Run configuration: flat `key = value` files, environment and flag
//! overrides, and the `--dump-config` round trip.

use std::fmt::{self, Write as _};
use std::path::PathBuf;

use flightdist::{PairParams, Tolerances};

/// Seed override that sits between the config file and the flags.
pub const SEED_ENV: &str = "FLIGHTDIST_SEED";

/// Slack allowed above the top of the support when the grid is given
/// explicitly.
const GRID_OVERSHOOT: f64 = 1.05;
const MIN_MC_N: usize = 100;

#[derive(Debug, Clone, PartialEq)]
pub enum Grid {
    /// Explicit radii, sorted.
    Points(Vec<f64>),
    /// `count` equally spaced points on `[0, (c1 + c2) t]`, ends included.
    Auto(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
}

impl Format {
    fn parse(s: &str) -> Option<Self> {
        (s == "csv").then_some(Format::Csv)
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("csv")
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McConfig {
    pub n: usize,
    pub seed: u64,
    pub alpha: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub pair: PairParams,
    pub t: f64,
    pub grid: Grid,
    /// Tolerance for double integrals; single integrals use a hundredth of it.
    pub tol: f64,
    pub mc: McConfig,
    pub out: Option<PathBuf>,
    pub format: Format,
}

impl RunConfig {
    pub fn tolerances(&self) -> Tolerances {
        Tolerances {
            one_d: self.tol / 100.0,
            two_d: self.tol,
        }
    }

    pub fn radii(&self) -> Vec<f64> {
        match &self.grid {
            Grid::Points(rs) => rs.clone(),
            Grid::Auto(n) => {
                let top = self.pair.max_distance(self.t);
                let last = n - 1;
                (0..=last)
                    .map(|i| {
                        if i == last {
                            top
                        } else {
                            top * i as f64 / last as f64
                        }
                    })
                    .collect()
            }
        }
    }

    /// The configuration in the file format, so that parsing the output
    /// gives back the same value.
    pub fn dump(&self) -> String {
        let (f, s) = (self.pair.first(), self.pair.second());
        let mut out = String::new();
        let mut line = |k: &str, v: &dyn fmt::Display| {
            let _ = writeln!(out, "{k} = {v}");
        };
        line("c1", &f.speed());
        line("lambda1", &f.rate());
        line("c2", &s.speed());
        line("lambda2", &s.rate());
        line("t", &self.t);
        match &self.grid {
            Grid::Points(rs) => {
                let list: Vec<String> = rs.iter().map(f64::to_string).collect();
                line("r", &list.join(", "));
            }
            Grid::Auto(n) => line("grid_n", n),
        }
        line("tol", &self.tol);
        line("mc_n", &self.mc.n);
        line("seed", &self.mc.seed);
        line("alpha", &self.mc.alpha);
        if let Some(p) = &self.out {
            line("out", &p.display());
        }
        line("format", &self.format);
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ConfigError {}

/// Every setting as optional, so that file, environment and flags can be
/// layered before validation.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Settings {
    pub c1: Option<f64>,
    pub c2: Option<f64>,
    pub lambda1: Option<f64>,
    pub lambda2: Option<f64>,
    pub t: Option<f64>,
    pub r: Option<Vec<f64>>,
    pub grid_n: Option<usize>,
    pub tol: Option<f64>,
    pub mc_n: Option<usize>,
    pub seed: Option<u64>,
    pub alpha: Option<f64>,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
}

fn field<T: std::str::FromStr>(key: &str, value: &str, line: usize) -> Result<T, ConfigError> {
    value.parse().map_err(|_| {
        ConfigError(format!(
            "line {line}: field '{key}': cannot parse {value:?}"
        ))
    })
}

impl Settings {
    /// Parses the flat file format: one `key = value` per line, `#` starts a
    /// comment, blank lines are ignored. `r` takes a comma-separated list.
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut s = Settings::default();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (key, value) = content.split_once('=').ok_or_else(|| {
                ConfigError(format!(
                    "line {line}: expected 'key = value', got {content:?}"
                ))
            })?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "c1" => s.c1 = Some(field(key, value, line)?),
                "c2" => s.c2 = Some(field(key, value, line)?),
                "lambda1" => s.lambda1 = Some(field(key, value, line)?),
                "lambda2" => s.lambda2 = Some(field(key, value, line)?),
                "t" => s.t = Some(field(key, value, line)?),
                "r" => {
                    let list = value
                        .split(',')
                        .map(|v| field(key, v.trim(), line))
                        .collect::<Result<Vec<f64>, _>>()?;
                    s.r = Some(list);
                }
                "grid_n" => s.grid_n = Some(field(key, value, line)?),
                "tol" => s.tol = Some(field(key, value, line)?),
                "mc_n" => s.mc_n = Some(field(key, value, line)?),
                "seed" => s.seed = Some(field(key, value, line)?),
                "alpha" => s.alpha = Some(field(key, value, line)?),
                "out" => s.out = Some(PathBuf::from(value)),
                "format" => {
                    s.format = Some(Format::parse(value).ok_or_else(|| {
                        ConfigError(format!(
                            "line {line}: field 'format': unsupported {value:?}"
                        ))
                    })?)
                }
                _ => return Err(ConfigError(format!("line {line}: unknown key {key:?}"))),
            }
        }
        Ok(s)
    }

    /// Values set in `other` win. `r` and `grid_n` count as one setting.
    pub fn overlay(self, other: Settings) -> Settings {
        let (r, grid_n) = if other.r.is_some() || other.grid_n.is_some() {
            (other.r, other.grid_n)
        } else {
            (self.r, self.grid_n)
        };
        Settings {
            c1: other.c1.or(self.c1),
            c2: other.c2.or(self.c2),
            lambda1: other.lambda1.or(self.lambda1),
            lambda2: other.lambda2.or(self.lambda2),
            t: other.t.or(self.t),
            r,
            grid_n,
            tol: other.tol.or(self.tol),
            mc_n: other.mc_n.or(self.mc_n),
            seed: other.seed.or(self.seed),
            alpha: other.alpha.or(self.alpha),
            out: other.out.or(self.out),
            format: other.format.or(self.format),
        }
    }

    /// Fills defaults and checks the invariants.
    pub fn resolve(self) -> Result<RunConfig, ConfigError> {
        let pair = PairParams::from_values(
            self.c1.unwrap_or(2.0),
            self.lambda1.unwrap_or(1.0),
            self.c2.unwrap_or(1.0),
            self.lambda2.unwrap_or(2.0),
        )
        .map_err(|e| ConfigError(e.to_string()))?;
        let t = self.t.unwrap_or(1.0);
        if !(t > 0.0 && t.is_finite()) {
            return Err(ConfigError(format!(
                "field 't': time must be positive, got {t}"
            )));
        }
        let top = pair.max_distance(t);
        let grid = match (self.r, self.grid_n) {
            (Some(_), Some(_)) => {
                return Err(ConfigError("give either 'r' or 'grid_n', not both".into()))
            }
            (Some(mut rs), None) => {
                if rs.is_empty() {
                    return Err(ConfigError("field 'r': empty list".into()));
                }
                if let Some(bad) = rs
                    .iter()
                    .find(|r| !(**r >= 0.0 && **r <= GRID_OVERSHOOT * top))
                {
                    return Err(ConfigError(format!(
                        "field 'r': {bad} outside [0, {}]",
                        GRID_OVERSHOOT * top
                    )));
                }
                rs.sort_by(f64::total_cmp);
                Grid::Points(rs)
            }
            (None, n) => {
                let n = n.unwrap_or(201);
                if n < 2 {
                    return Err(ConfigError(format!(
                        "field 'grid_n': need at least 2 points, got {n}"
                    )));
                }
                Grid::Auto(n)
            }
        };
        let tol = self.tol.unwrap_or(1e-8);
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(ConfigError(format!(
                "field 'tol': must be positive, got {tol}"
            )));
        }
        let mc = McConfig {
            n: self.mc_n.unwrap_or(1_000_000),
            seed: self.seed.unwrap_or(1),
            alpha: self.alpha.unwrap_or(0.01),
        };
        if mc.n < MIN_MC_N {
            return Err(ConfigError(format!(
                "field 'mc_n': need at least {MIN_MC_N}, got {}",
                mc.n
            )));
        }
        if !(mc.alpha > 0.0 && mc.alpha < 1.0) {
            return Err(ConfigError(format!(
                "field 'alpha': must lie in (0, 1), got {}",
                mc.alpha
            )));
        }
        Ok(RunConfig {
            pair,
            t,
            grid,
            tol,
            mc,
            out: self.out,
            format: self.format.unwrap_or(Format::Csv),
        })
    }
}
