use super::{rational_to_f64, Rational};
use crate::error::{Error, Result};
use num_traits::{One, Zero};
use serde::Serialize;
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Float,
    Complex,
}

impl FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Mode::Exact),
            "float" => Ok(Mode::Float),
            "complex" => Ok(Mode::Complex),
            _ => Err(Error::Parse(format!("unknown backend '{s}'"))),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Exact => "exact",
            Mode::Float => "float",
            Mode::Complex => "complex",
        })
    }
}

/// Numeric value of `q`, kept rational when given as `p/r`.
#[derive(Clone, Debug, PartialEq)]
pub enum QParam {
    Rational(Rational),
    Float(f64),
}

impl QParam {
    pub fn as_f64(&self) -> f64 {
        match self {
            QParam::Rational(r) => rational_to_f64(r),
            QParam::Float(x) => *x,
        }
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            QParam::Rational(r) => Some(r),
            QParam::Float(_) => None,
        }
    }
}

impl FromStr for QParam {
    type Err = Error;
    /// Accepts `p/r` (kept exact) or a decimal.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.contains('/') {
            let (n, d) = s.split_once('/').unwrap();
            let n = n.trim().parse().map_err(|_| Error::Parse(format!("bad q '{s}'")))?;
            let d: num_bigint::BigInt =
                d.trim().parse().map_err(|_| Error::Parse(format!("bad q '{s}'")))?;
            if d.is_zero() {
                return Err(Error::Parse(format!("bad q '{s}'")));
            }
            Ok(QParam::Rational(Rational::new(n, d)))
        } else {
            s.parse::<f64>()
                .map(QParam::Float)
                .map_err(|_| Error::Parse(format!("bad q '{s}'")))
        }
    }
}

impl fmt::Display for QParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QParam::Rational(r) => write!(f, "{r}"),
            QParam::Float(x) => write!(f, "{x}"),
        }
    }
}

/// Which scalar type evaluators produce, and how hard they work.
#[derive(Clone, Debug, PartialEq)]
pub struct BackendConfig {
    pub mode: Mode,
    /// Ignored in exact mode.
    pub q: QParam,
    /// Series are exact modulo `q^order` (exact mode).
    pub order: usize,
    /// Starting truncation for numeric sums; raised automatically when a
    /// rigorous tail bound asks for more.
    pub trunc: usize,
    pub tol: f64,
}

pub const DEFAULT_ORDER: usize = 25;
pub const DEFAULT_TRUNC: usize = 200;
pub const DEFAULT_TOL: f64 = 1e-10;

impl BackendConfig {
    pub fn exact(order: usize) -> Self {
        BackendConfig {
            mode: Mode::Exact,
            q: QParam::Float(0.5),
            order,
            trunc: DEFAULT_TRUNC,
            tol: DEFAULT_TOL,
        }
    }

    pub fn float(q: f64) -> Self {
        BackendConfig {
            mode: Mode::Float,
            q: QParam::Float(q),
            order: DEFAULT_ORDER,
            trunc: DEFAULT_TRUNC,
            tol: DEFAULT_TOL,
        }
    }

    pub fn complex(q: f64) -> Self {
        BackendConfig {
            mode: Mode::Complex,
            ..Self::float(q)
        }
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn with_trunc(mut self, trunc: usize) -> Self {
        self.trunc = trunc;
        self
    }

    pub fn with_q(mut self, q: QParam) -> Self {
        self.q = q;
        self
    }

    pub fn q_f64(&self) -> f64 {
        self.q.as_f64()
    }

    pub fn is_exact(&self) -> bool {
        self.mode == Mode::Exact
    }

    pub fn validate(&self) -> Result<()> {
        if self.mode == Mode::Exact {
            if self.order < 1 {
                return Err(Error::Parameter("order Q must be at least 1".into()));
            }
            return Ok(());
        }
        let ok = match &self.q {
            QParam::Rational(r) => *r > Rational::zero() && *r < Rational::one(),
            QParam::Float(x) => x.is_finite() && *x > 0.0 && *x < 1.0,
        };
        if !ok {
            return Err(Error::Parameter(format!("q = {} is outside (0, 1)", self.q)));
        }
        if self.trunc < 1 {
            return Err(Error::Parameter("truncation N must be at least 1".into()));
        }
        if !(self.tol > 0.0) {
            return Err(Error::Parameter("tolerance must be positive".into()));
        }
        Ok(())
    }

    /// Short description recorded in reports.
    pub fn fingerprint(&self) -> String {
        match self.mode {
            Mode::Exact => format!("exact:Q={}", self.order),
            m => format!("{m}:q={},N={},tol={:e}", self.q, self.trunc, self.tol),
        }
    }
}

impl Default for BackendConfig {
    fn default() -> Self {
        Self::exact(DEFAULT_ORDER)
    }
}

/// Backend plus an optional hard cap on the outermost summation index.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct EvalParams {
    pub backend: BackendConfig,
    pub index_cap: Option<u64>,
}

impl From<BackendConfig> for EvalParams {
    fn from(backend: BackendConfig) -> Self {
        EvalParams {
            backend,
            index_cap: None,
        }
    }
}

impl From<&BackendConfig> for EvalParams {
    fn from(backend: &BackendConfig) -> Self {
        backend.clone().into()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_rational_and_decimal_q() {
        assert_eq!("1/2".parse::<QParam>().unwrap().as_f64(), 0.5);
        assert_eq!("0.25".parse::<QParam>().unwrap().as_f64(), 0.25);
        assert!("1/0".parse::<QParam>().is_err());
    }

    #[test]
    fn rejects_q_outside_unit_interval() {
        assert!(BackendConfig::float(1.0).validate().is_err());
        assert!(BackendConfig::float(0.5).validate().is_ok());
        assert!(BackendConfig::exact(0).validate().is_err());
    }
}
