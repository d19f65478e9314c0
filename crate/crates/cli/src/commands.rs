use std::fmt::Write as _;

use flightdist::mc::{dkw_half_width, sample_distances};
use flightdist::{classify, DistanceLaw, Error, RegimeTag};

use crate::config::RunConfig;

/// Looser than this and the checks in `validate` cannot be trusted.
const VALIDATE_MAX_TOL: f64 = 1e-6;
const JUNCTION_GAP: f64 = 1e-5;
/// Offset around junctions, relative to the top of the support. The law
/// can have an inverse square root density at `(c1 - c2) t`, so the gap
/// only shrinks like the square root of the offset.
const JUNCTION_OFFSET: f64 = 1e-10;
const COMPONENT_SUM_TOL: f64 = 1e-6;
const ERROR_BUDGET_FACTOR: f64 = 10.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    ValidationFailed,
    NoConvergence,
}

impl Status {
    pub fn code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::ValidationFailed => 1,
            Status::NoConvergence => 3,
        }
    }
}

pub struct Output {
    pub text: String,
    pub warnings: Vec<String>,
    pub status: Status,
}

fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn law(cfg: &RunConfig) -> DistanceLaw {
    DistanceLaw::with_tolerances(cfg.pair, cfg.tolerances())
}

pub fn eval(cfg: &RunConfig) -> Output {
    let rs = cfg.radii();
    let rows = law(cfg).grid(&rs, cfg.t);
    let mut text = String::from("r,phi,abs_error,regime\n");
    let mut warnings = Vec::new();
    for (&r, row) in rs.iter().zip(rows) {
        let (value, err, regime) = match row {
            Ok(v) => (v.value, v.abs_error, v.regime),
            Err(e) => {
                let regime = classify(&cfg.pair, r, cfg.t).unwrap_or(RegimeTag::Zero);
                warnings.push(format!("r={r} ({regime}): {e}"));
                match e {
                    Error::Convergence {
                        estimate,
                        abs_error,
                        ..
                    } => (estimate.clamp(0.0, 1.0), abs_error, regime),
                    _ => (f64::NAN, f64::NAN, regime),
                }
            }
        };
        let _ = writeln!(text, "{},{},{},{}", num(r), num(value), num(err), regime);
    }
    let status = if warnings.is_empty() {
        Status::Ok
    } else {
        Status::NoConvergence
    };
    Output {
        text,
        warnings,
        status,
    }
}

pub fn sample(cfg: &RunConfig, raw: bool) -> Result<Output, Error> {
    let mut d = sample_distances(&cfg.pair, cfg.t, cfg.mc.n, cfg.mc.seed)?;
    let (f, s) = (cfg.pair.first(), cfg.pair.second());
    let mut text = format!(
        "# seed={} n={} c1={} lambda1={} c2={} lambda2={} t={}\n",
        cfg.mc.seed,
        cfg.mc.n,
        f.speed(),
        f.rate(),
        s.speed(),
        s.rate(),
        cfg.t
    );
    if raw {
        text.push_str("distance\n");
        for x in d {
            let _ = writeln!(text, "{}", num(x));
        }
    } else {
        d.sort_by(f64::total_cmp);
        text.push_str("r,empirical_cdf\n");
        let n = d.len() as f64;
        for r in cfg.radii() {
            let count = d.partition_point(|&x| x <= r);
            let _ = writeln!(text, "{},{}", num(r), num(count as f64 / n));
        }
    }
    Ok(Output {
        text,
        warnings: Vec::new(),
        status: Status::Ok,
    })
}

struct Check {
    name: String,
    measured: f64,
    allowed: f64,
    pass: bool,
}

pub fn validate(cfg: &RunConfig) -> Output {
    let law = law(cfg);
    let t = cfg.t;
    let top = cfg.pair.max_distance(t);
    let mut checks = Vec::new();
    let mut warnings = Vec::new();
    let value = |r: f64, warnings: &mut Vec<String>| match law.phi(r, t) {
        Ok(v) => Some(v),
        Err(e) => {
            warnings.push(format!("r={r}: {e}"));
            None
        }
    };

    if cfg.tol > VALIDATE_MAX_TOL {
        warnings.push(format!(
            "tolerance {} is above {VALIDATE_MAX_TOL:e}; the quadrature cannot support the checks below",
            cfg.tol
        ));
    }
    checks.push(Check {
        name: "quadrature tolerance".into(),
        measured: cfg.tol,
        allowed: VALIDATE_MAX_TOL,
        pass: cfg.tol <= VALIDATE_MAX_TOL,
    });

    // Continuity at the ends of the support and across every junction.
    let h = JUNCTION_OFFSET * top;
    let mut junctions = law
        .regime(top / 2.0, t)
        .map(|r| r.junctions)
        .unwrap_or_default();
    junctions.dedup();
    for (k, &j) in junctions.iter().enumerate() {
        let (lo, hi) = if k == 0 {
            (None, value(h, &mut warnings).map(|v| v.value))
        } else if k == junctions.len() - 1 {
            (value(j - h, &mut warnings).map(|v| v.value), Some(1.0))
        } else {
            (
                value(j - h, &mut warnings).map(|v| v.value),
                value(j + h, &mut warnings).map(|v| v.value),
            )
        };
        let gap = match (lo, hi) {
            (None, Some(b)) => Some(b),
            (Some(a), Some(b)) => Some((b - a).abs()),
            _ => None,
        };
        let measured = gap.unwrap_or(f64::NAN);
        checks.push(Check {
            name: format!("continuity at r={j}"),
            measured,
            allowed: JUNCTION_GAP,
            pass: measured < JUNCTION_GAP,
        });
    }

    // Branch formulas against the sum of the joint components.
    let rs = cfg.radii();
    let mut worst: f64 = 0.0;
    let mut sum_ok = true;
    for &r in &rs {
        match (law.phi(r, t), law.components(r, t)) {
            (Ok(v), Ok(c)) => worst = worst.max((v.raw - c.sum().value).abs()),
            (a, b) => {
                sum_ok = false;
                for e in [a.err(), b.err()].into_iter().flatten() {
                    warnings.push(format!("r={r}: {e}"));
                }
            }
        }
    }
    checks.push(Check {
        name: format!("branch vs component sum on {} points", rs.len()),
        measured: worst,
        allowed: COMPONENT_SUM_TOL,
        pass: sum_ok && worst <= COMPONENT_SUM_TOL,
    });

    // Simulation against the law, DKW band plus the quadrature budget.
    match sample_distances(&cfg.pair, t, cfg.mc.n, cfg.mc.seed) {
        Ok(mut d) => {
            d.sort_by(f64::total_cmp);
            let n = d.len() as f64;
            let (mut sup, mut budget): (f64, f64) = (0.0, 0.0);
            let mut ok = true;
            for (&r, v) in rs.iter().zip(law.grid(&rs, t)) {
                match v {
                    Ok(v) => {
                        let emp = d.partition_point(|&x| x <= r) as f64 / n;
                        sup = sup.max((v.value - emp).abs());
                        budget = budget.max(v.abs_error);
                    }
                    Err(e) => {
                        ok = false;
                        warnings.push(format!("r={r}: {e}"));
                    }
                }
            }
            let allowed = dkw_half_width(cfg.mc.n, cfg.mc.alpha) + ERROR_BUDGET_FACTOR * budget;
            checks.push(Check {
                name: format!(
                    "monte carlo sup distance (n={}, seed={})",
                    cfg.mc.n, cfg.mc.seed
                ),
                measured: sup,
                allowed,
                pass: ok && sup <= allowed,
            });
        }
        Err(e) => {
            warnings.push(format!("simulation: {e}"));
            checks.push(Check {
                name: "monte carlo sup distance".into(),
                measured: f64::NAN,
                allowed: f64::NAN,
                pass: false,
            });
        }
    }

    let mut text = String::new();
    for c in &checks {
        let _ = writeln!(
            text,
            "{} {}: measured {:.3e}, allowed {:.3e}",
            if c.pass { "PASS" } else { "FAIL" },
            c.name,
            c.measured,
            c.allowed
        );
    }
    let failed = checks.iter().filter(|c| !c.pass).count();
    let _ = writeln!(
        text,
        "{} of {} checks passed",
        checks.len() - failed,
        checks.len()
    );
    let status = if failed == 0 && warnings.is_empty() {
        Status::Ok
    } else {
        Status::ValidationFailed
    };
    Output {
        text,
        warnings,
        status,
    }
}
