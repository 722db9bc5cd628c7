//! Scalars and backends.
//!
//! Three scalar flavours are used throughout:
//!
//! - [`QSeries`]: power series in a formal `q`, exact modulo `q^Q`;
//! - [`FloatVal`]: a double together with a bound on its truncation error;
//! - [`ComplexVal`]: the complex counterpart, for roots of unity.
//!
//! [`Value`] wraps all three so that evaluators can be written once and driven
//! by a [`BackendConfig`].

mod backend;
mod float;
mod functions;
mod poly;
mod series;
mod text;
mod value;

pub use backend::{BackendConfig, EvalParams, Mode, QParam};
pub use float::{ComplexVal, FloatVal};
pub use functions::{euler_gamma_q, qgamma, qint, qint_f64, qpow_asym, ProductLength};
pub use poly::QPoly;
pub use series::QSeries;
pub use value::Value;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

/// Arbitrary precision rational, always in lowest terms.
pub type Rational = num_rational::BigRational;

/// `n` as a rational.
pub fn rint(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n / d` as a rational. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Nearest double to a rational.
pub fn rational_to_f64(r: &Rational) -> f64 {
    match (r.numer().to_f64(), r.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            // Scale both sides down until they fit.
            let shift = r.numer().bits().max(r.denom().bits()).saturating_sub(1000);
            let n = (r.numer() >> shift).to_f64().unwrap_or(f64::NAN);
            let d = (r.denom() >> shift).to_f64().unwrap_or(f64::NAN);
            n / d
        }
    }
}

/// Binomial coefficient as a big integer.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    let mut acc = BigInt::from(1);
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `n!` as a big integer.
pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::from(1), |acc, i| acc * BigInt::from(i))
}
