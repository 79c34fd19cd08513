use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A local influence function that depends only on the number of infected
/// neighbors `c` and the degree `d` of the vertex being influenced.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CascadeModel {
    /// Independent cascade: `1 - (1 - p)^c`.
    Icm { p: f64 },
    /// Linear threshold with uniform weights `1/d`: `c / d`.
    Ltm,
    /// Independent cascade deflated by `q` on singletons.
    Dicm { p: f64, q: f64 },
    /// S-shaped (Tullock power 2) response in the infected fraction.
    Scm,
    /// `eps` for one infected neighbor, certainty from two on.
    TwoStep { eps: f64 },
}

impl CascadeModel {
    pub fn icm(p: f64) -> Result<Self> {
        check_unit("p", p)?;
        Ok(CascadeModel::Icm { p })
    }

    pub fn dicm(p: f64, q: f64) -> Result<Self> {
        check_unit("p", p)?;
        check_unit("q", q)?;
        Ok(CascadeModel::Dicm { p, q })
    }

    pub fn two_step(eps: f64) -> Result<Self> {
        check_unit("eps", eps)?;
        Ok(CascadeModel::TwoStep { eps })
    }

    /// `f(c, d)`. Errors when `c > d`.
    pub fn local_influence(&self, infected: usize, degree: usize) -> Result<f64> {
        if infected > degree {
            return Err(Error::InvalidArgument(format!(
                "{infected} infected neighbors exceed degree {degree}"
            )));
        }
        Ok(self.f(infected, degree))
    }

    /// Unchecked `f(c, d)`; callers guarantee `c <= d`.
    #[inline]
    pub fn f(&self, c: usize, d: usize) -> f64 {
        if c == 0 {
            return 0.0;
        }
        match *self {
            CascadeModel::Icm { p } => icm(p, c),
            CascadeModel::Ltm => c as f64 / d as f64,
            CascadeModel::Dicm { p, q } => {
                if c == 1 {
                    q * icm(p, 1)
                } else {
                    icm(p, c)
                }
            }
            CascadeModel::Scm => {
                let x = c as f64 / d as f64;
                let a = (x / 2.0) * (x / 2.0);
                let b = (1.0 - x) * (1.0 - x);
                a / (a + b)
            }
            CascadeModel::TwoStep { eps } => {
                if c == 1 {
                    eps
                } else {
                    1.0
                }
            }
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            CascadeModel::Icm { .. } => "icm",
            CascadeModel::Ltm => "ltm",
            CascadeModel::Dicm { .. } => "dicm",
            CascadeModel::Scm => "scm",
            CascadeModel::TwoStep { .. } => "twostep",
        }
    }
}

#[inline]
fn icm(p: f64, c: usize) -> f64 {
    1.0 - (1.0 - p).powi(c as i32)
}

fn check_unit(name: &str, value: f64) -> Result<()> {
    if (0.0..=1.0).contains(&value) {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("{name}={value} is outside [0, 1]")))
    }
}

/// Formats as the CLI spelling, e.g. `dicm:p=0.01,q=0.1`.
impl fmt::Display for CascadeModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            CascadeModel::Icm { p } => write!(f, "icm:p={p}"),
            CascadeModel::Ltm => write!(f, "ltm"),
            CascadeModel::Dicm { p, q } => write!(f, "dicm:p={p},q={q}"),
            CascadeModel::Scm => write!(f, "scm"),
            CascadeModel::TwoStep { eps } => write!(f, "twostep:eps={eps}"),
        }
    }
}

impl FromStr for CascadeModel {
    type Err = Error;

    fn from_str(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        let (name, params) = match spec.split_once(':') {
            Some((name, params)) => (name, params),
            None => (spec, ""),
        };
        let mut p = None;
        let mut q = None;
        let mut eps = None;
        for pair in params.split(',').filter(|s| !s.trim().is_empty()) {
            let (key, value) = pair
                .split_once('=')
                .ok_or_else(|| Error::InvalidArgument(format!("bad cascade parameter {pair:?}")))?;
            let value: f64 = value
                .trim()
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("bad number in {pair:?}")))?;
            let slot = match key.trim() {
                "p" => &mut p,
                "q" => &mut q,
                "eps" => &mut eps,
                other => {
                    return Err(Error::InvalidArgument(format!(
                        "unknown cascade parameter {other:?}"
                    )))
                }
            };
            *slot = Some(value);
        }
        let require = |v: Option<f64>, key: &str| {
            v.ok_or_else(|| Error::InvalidArgument(format!("{name} needs parameter {key}")))
        };
        let reject_extra = |allowed: &[&str]| -> Result<()> {
            for (key, v) in [("p", p), ("q", q), ("eps", eps)] {
                if v.is_some() && !allowed.contains(&key) {
                    return Err(Error::InvalidArgument(format!(
                        "{name} does not take parameter {key}"
                    )));
                }
            }
            Ok(())
        };
        match name.to_ascii_lowercase().as_str() {
            "icm" => {
                reject_extra(&["p"])?;
                CascadeModel::icm(require(p, "p")?)
            }
            "dicm" => {
                reject_extra(&["p", "q"])?;
                CascadeModel::dicm(require(p, "p")?, require(q, "q")?)
            }
            "ltm" => {
                reject_extra(&[])?;
                Ok(CascadeModel::Ltm)
            }
            "scm" => {
                reject_extra(&[])?;
                Ok(CascadeModel::Scm)
            }
            "twostep" => {
                reject_extra(&["eps"])?;
                CascadeModel::two_step(require(eps, "eps")?)
            }
            other => Err(Error::InvalidArgument(format!("unknown cascade model {other:?}"))),
        }
    }
}
