//! Continuity moduli: power laws and tabulated increasing functions.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ModulusSpec {
    /// `c * t^(1/alpha)`.
    Power { c: f64, alpha: f64 },
    /// Piecewise linear through the origin and the knots, extended with the last slope.
    Tabulated { knots: Vec<(f64, f64)> },
}

impl ModulusSpec {
    pub fn power(c: f64, alpha: f64) -> Result<Self> {
        if !(c > 0.0 && c.is_finite()) || !(alpha > 0.0 && alpha.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "power modulus needs c > 0 and alpha > 0, got c = {c}, alpha = {alpha}"
            )));
        }
        Ok(ModulusSpec::Power { c, alpha })
    }

    /// Knots must be strictly increasing in both coordinates and positive.
    pub fn tabulated(knots: Vec<(f64, f64)>) -> Result<Self> {
        let mut prev = (0.0, 0.0);
        for &(t, y) in &knots {
            if !(t > prev.0 && y > prev.1) || !t.is_finite() || !y.is_finite() {
                return Err(Error::InvalidParameter("tabulated modulus must increase strictly from the origin".into()));
            }
            prev = (t, y);
        }
        if knots.is_empty() {
            return Err(Error::InvalidParameter("tabulated modulus needs a knot".into()));
        }
        Ok(ModulusSpec::Tabulated { knots })
    }

    pub fn eval(&self, t: f64) -> f64 {
        if t <= 0.0 {
            return 0.0;
        }
        match self {
            ModulusSpec::Power { c, alpha } => c * t.powf(1.0 / alpha),
            ModulusSpec::Tabulated { knots } => {
                let mut prev = (0.0, 0.0);
                for &(kt, ky) in knots {
                    if t <= kt {
                        return prev.1 + (ky - prev.1) * (t - prev.0) / (kt - prev.0);
                    }
                    prev = (kt, ky);
                }
                let n = knots.len();
                let before = if n >= 2 { knots[n - 2] } else { (0.0, 0.0) };
                let slope = (prev.1 - before.1) / (prev.0 - before.0);
                prev.1 + slope * (t - prev.0)
            }
        }
    }

    /// Least `t` with `eval(t) = y`.
    pub fn inverse(&self, y: f64) -> Result<f64> {
        if y <= 0.0 {
            return Ok(0.0);
        }
        match self {
            ModulusSpec::Power { c, alpha } => Ok((y / c).powf(*alpha)),
            ModulusSpec::Tabulated { knots } => {
                let mut prev = (0.0, 0.0);
                for &(kt, ky) in knots {
                    if y <= ky {
                        return Ok(prev.0 + (kt - prev.0) * (y - prev.1) / (ky - prev.1));
                    }
                    prev = (kt, ky);
                }
                Err(Error::InverseUndefined(y))
            }
        }
    }
}
