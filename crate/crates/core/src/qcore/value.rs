use super::{rational_to_f64, BackendConfig, ComplexVal, FloatVal, Mode, QPoly, QSeries, Rational};
use num_complex::Complex64;
use num_traits::{Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// A scalar from any backend.
///
/// Arithmetic between a float and a complex value promotes to complex.
/// Mixing exact with numeric values is a programming error and panics.
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Exact(QSeries),
    Float(FloatVal),
    Complex(ComplexVal),
}

impl Value {
    pub fn as_series(&self) -> Option<&QSeries> {
        match self {
            Value::Exact(s) => Some(s),
            _ => None,
        }
    }

    pub fn as_float(&self) -> Option<FloatVal> {
        match self {
            Value::Float(f) => Some(*f),
            _ => None,
        }
    }

    pub fn to_complex(&self) -> Option<ComplexVal> {
        match self {
            Value::Float(f) => Some((*f).into()),
            Value::Complex(c) => Some(*c),
            Value::Exact(_) => None,
        }
    }

    pub fn scale(&self, c: &Rational) -> Value {
        match self {
            Value::Exact(s) => Value::Exact(s.scale(c)),
            Value::Float(f) => Value::Float(f.scale(rational_to_f64(c))),
            Value::Complex(z) => Value::Complex(z.scale(Complex64::new(rational_to_f64(c), 0.0))),
        }
    }

    pub fn pow(&self, k: u32, cfg: &BackendConfig) -> Value {
        (0..k).fold(cfg.one(), |acc, _| &acc * self)
    }

    /// Residual verdict: exact zero series, or zero within `bound + tol`.
    pub fn is_zero_within(&self, tol: f64) -> bool {
        match self {
            Value::Exact(s) => s.is_zero(),
            Value::Float(f) => f.is_zero_within(tol),
            Value::Complex(z) => z.is_zero_within(tol),
        }
    }

    /// Size of a residual: largest coefficient magnitude, or `|value|`.
    pub fn norm(&self) -> f64 {
        match self {
            Value::Exact(s) => s
                .coeffs()
                .iter()
                .map(|c| rational_to_f64(&c.abs()))
                .fold(0.0, f64::max),
            Value::Float(f) => f.value.abs(),
            Value::Complex(z) => z.value.norm(),
        }
    }

    pub fn tail_bound(&self) -> f64 {
        match self {
            Value::Exact(_) => 0.0,
            Value::Float(f) => f.tail_bound,
            Value::Complex(z) => z.tail_bound,
        }
    }

    pub fn is_heuristic(&self) -> bool {
        match self {
            Value::Exact(_) => false,
            Value::Float(f) => f.heuristic,
            Value::Complex(z) => z.heuristic,
        }
    }

    fn binop(
        &self,
        o: &Value,
        fs: impl Fn(&QSeries, &QSeries) -> QSeries,
        ff: impl Fn(FloatVal, FloatVal) -> FloatVal,
        fc: impl Fn(ComplexVal, ComplexVal) -> ComplexVal,
    ) -> Value {
        match (self, o) {
            (Value::Exact(a), Value::Exact(b)) => Value::Exact(fs(a, b)),
            (Value::Float(a), Value::Float(b)) => Value::Float(ff(*a, *b)),
            (Value::Exact(_), _) | (_, Value::Exact(_)) => {
                panic!("mixed exact and numeric values in arithmetic")
            }
            (a, b) => Value::Complex(fc(a.to_complex().unwrap(), b.to_complex().unwrap())),
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Exact(s) => write!(f, "{s}"),
            Value::Float(x) => write!(f, "{x}"),
            Value::Complex(z) => write!(f, "{z}"),
        }
    }
}

impl Add<&Value> for &Value {
    type Output = Value;
    fn add(self, o: &Value) -> Value {
        self.binop(o, |a, b| a + b, |a, b| a + b, |a, b| a + b)
    }
}

impl Sub<&Value> for &Value {
    type Output = Value;
    fn sub(self, o: &Value) -> Value {
        self.binop(o, |a, b| a - b, |a, b| a - b, |a, b| a - b)
    }
}

impl Mul<&Value> for &Value {
    type Output = Value;
    fn mul(self, o: &Value) -> Value {
        self.binop(o, |a, b| a * b, |a, b| a * b, |a, b| a * b)
    }
}

impl Neg for &Value {
    type Output = Value;
    fn neg(self) -> Value {
        match self {
            Value::Exact(s) => Value::Exact(-s),
            Value::Float(f) => Value::Float(-*f),
            Value::Complex(z) => Value::Complex(-*z),
        }
    }
}

macro_rules! owned_value_op {
    ($tr:ident, $m:ident) => {
        impl $tr<Value> for Value {
            type Output = Value;
            fn $m(self, o: Value) -> Value {
                (&self).$m(&o)
            }
        }
    };
}
owned_value_op!(Add, add);
owned_value_op!(Sub, sub);
owned_value_op!(Mul, mul);

/// Constructors for the backend's scalar type.
impl BackendConfig {
    pub fn constant(&self, c: &Rational) -> Value {
        match self.mode {
            Mode::Exact => Value::Exact(QSeries::constant(c.clone(), self.order)),
            Mode::Float => Value::Float(FloatVal::exact(rational_to_f64(c))),
            Mode::Complex => {
                Value::Complex(ComplexVal::exact(Complex64::new(rational_to_f64(c), 0.0)))
            }
        }
    }

    pub fn zero(&self) -> Value {
        self.constant(&Rational::zero())
    }

    pub fn one(&self) -> Value {
        self.constant(&Rational::from_integer(1.into()))
    }

    /// A numeric constant; exact mode has no use for these.
    pub fn float_value(&self, x: FloatVal) -> Value {
        match self.mode {
            Mode::Complex => Value::Complex(x.into()),
            _ => Value::Float(x),
        }
    }

    /// `p(q)` in the backend: a truncated series or a number.
    pub fn poly(&self, p: &QPoly) -> Value {
        match self.mode {
            Mode::Exact => Value::Exact(p.to_series(self.order)),
            Mode::Float => Value::Float(FloatVal::exact(p.eval_f64(self.q_f64()))),
            Mode::Complex => {
                Value::Complex(ComplexVal::exact(Complex64::new(p.eval_f64(self.q_f64()), 0.0)))
            }
        }
    }

    pub fn q_value(&self) -> Value {
        self.poly(&QPoly::q())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::rat;

    #[test]
    fn float_and_complex_promote() {
        let cfg = BackendConfig::float(0.5);
        let a = cfg.constant(&rat(1, 2));
        let b = Value::Complex(ComplexVal::exact(Complex64::new(0.0, 1.0)));
        match &a * &b {
            Value::Complex(z) => assert_eq!(z.value, Complex64::new(0.0, 0.5)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn exact_poly_embedding() {
        let cfg = BackendConfig::exact(3);
        let v = cfg.poly(&QPoly::one_minus_q_pow(3));
        assert_eq!(v.to_string(), "1 - 3q + 3q^2 + O(q^3)");
    }
}
