use num_complex::Complex64;
use serde::Serialize;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Relative slack added per arithmetic step to cover rounding.
const ROUNDING: f64 = 4.0 * f64::EPSILON;

/// A double with a bound on its distance from the true value.
///
/// `heuristic` is set when the bound came from a doubling test rather than a
/// proof; it is contagious through arithmetic.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FloatVal {
    pub value: f64,
    pub tail_bound: f64,
    pub heuristic: bool,
}

impl FloatVal {
    pub fn exact(value: f64) -> Self {
        FloatVal {
            value,
            tail_bound: 0.0,
            heuristic: false,
        }
    }

    pub fn new(value: f64, tail_bound: f64, heuristic: bool) -> Self {
        FloatVal {
            value,
            tail_bound: tail_bound.abs(),
            heuristic,
        }
    }

    /// Intervals `value ± tail_bound` overlap, widened by `tol`.
    pub fn agrees_with(&self, o: &FloatVal, tol: f64) -> bool {
        (self.value - o.value).abs() <= self.tail_bound + o.tail_bound + tol
    }

    /// Zero lies within `tail_bound + tol` of the value.
    pub fn is_zero_within(&self, tol: f64) -> bool {
        self.value.abs() <= self.tail_bound + tol
    }

    pub fn recip(&self) -> FloatVal {
        let v = 1.0 / self.value;
        let lo = self.value.abs() - self.tail_bound;
        let bound = if lo > 0.0 {
            self.tail_bound / (self.value.abs() * lo)
        } else {
            f64::INFINITY
        };
        FloatVal::new(v, bound + v.abs() * ROUNDING, self.heuristic)
    }

    pub fn scale(&self, c: f64) -> FloatVal {
        FloatVal::new(
            self.value * c,
            self.tail_bound * c.abs() + (self.value * c).abs() * ROUNDING,
            self.heuristic,
        )
    }
}

impl fmt::Display for FloatVal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.heuristic { " (heuristic)" } else { "" };
        write!(f, "{:.16e} ± {:.3e}{tag}", self.value, self.tail_bound)
    }
}

impl Add for FloatVal {
    type Output = FloatVal;
    fn add(self, o: FloatVal) -> FloatVal {
        let v = self.value + o.value;
        FloatVal::new(
            v,
            self.tail_bound + o.tail_bound + v.abs() * ROUNDING,
            self.heuristic || o.heuristic,
        )
    }
}

impl Sub for FloatVal {
    type Output = FloatVal;
    fn sub(self, o: FloatVal) -> FloatVal {
        self + (-o)
    }
}

impl Mul for FloatVal {
    type Output = FloatVal;
    fn mul(self, o: FloatVal) -> FloatVal {
        let v = self.value * o.value;
        let b = self.value.abs() * o.tail_bound
            + o.value.abs() * self.tail_bound
            + self.tail_bound * o.tail_bound;
        FloatVal::new(v, b + v.abs() * ROUNDING, self.heuristic || o.heuristic)
    }
}

impl Neg for FloatVal {
    type Output = FloatVal;
    fn neg(self) -> FloatVal {
        FloatVal { value: -self.value, ..self }
    }
}

/// Complex counterpart of [`FloatVal`]; the bound applies to the modulus of
/// the error.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ComplexVal {
    pub value: Complex64,
    pub tail_bound: f64,
    pub heuristic: bool,
}

impl ComplexVal {
    pub fn exact(value: Complex64) -> Self {
        ComplexVal {
            value,
            tail_bound: 0.0,
            heuristic: false,
        }
    }

    pub fn new(value: Complex64, tail_bound: f64, heuristic: bool) -> Self {
        ComplexVal {
            value,
            tail_bound: tail_bound.abs(),
            heuristic,
        }
    }

    pub fn re(&self) -> f64 {
        self.value.re
    }

    pub fn im(&self) -> f64 {
        self.value.im
    }

    pub fn is_zero_within(&self, tol: f64) -> bool {
        self.value.norm() <= self.tail_bound + tol
    }

    pub fn scale(&self, c: Complex64) -> ComplexVal {
        let v = self.value * c;
        ComplexVal::new(
            v,
            self.tail_bound * c.norm() + v.norm() * ROUNDING,
            self.heuristic,
        )
    }
}

impl From<FloatVal> for ComplexVal {
    fn from(f: FloatVal) -> Self {
        ComplexVal::new(Complex64::new(f.value, 0.0), f.tail_bound, f.heuristic)
    }
}

impl fmt::Display for ComplexVal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.heuristic { " (heuristic)" } else { "" };
        let sign = if self.value.im < 0.0 { '-' } else { '+' };
        write!(
            f,
            "({:.16e} {sign} {:.16e}i) ± {:.3e}{tag}",
            self.value.re,
            self.value.im.abs(),
            self.tail_bound
        )
    }
}

impl Add for ComplexVal {
    type Output = ComplexVal;
    fn add(self, o: ComplexVal) -> ComplexVal {
        let v = self.value + o.value;
        ComplexVal::new(
            v,
            self.tail_bound + o.tail_bound + v.norm() * ROUNDING,
            self.heuristic || o.heuristic,
        )
    }
}

impl Sub for ComplexVal {
    type Output = ComplexVal;
    fn sub(self, o: ComplexVal) -> ComplexVal {
        self + (-o)
    }
}

impl Mul for ComplexVal {
    type Output = ComplexVal;
    fn mul(self, o: ComplexVal) -> ComplexVal {
        let v = self.value * o.value;
        let b = self.value.norm() * o.tail_bound
            + o.value.norm() * self.tail_bound
            + self.tail_bound * o.tail_bound;
        ComplexVal::new(v, b + v.norm() * ROUNDING, self.heuristic || o.heuristic)
    }
}

impl Neg for ComplexVal {
    type Output = ComplexVal;
    fn neg(self) -> ComplexVal {
        ComplexVal {
            value: -self.value,
            ..self
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bounds_propagate_through_products() {
        let a = FloatVal::new(2.0, 0.1, false);
        let b = FloatVal::new(3.0, 0.2, true);
        let c = a * b;
        assert_eq!(c.value, 6.0);
        assert!(c.tail_bound >= 2.0 * 0.2 + 3.0 * 0.1 + 0.02);
        assert!(c.heuristic);
    }

    #[test]
    fn overlap_comparison() {
        let a = FloatVal::new(1.0, 1e-9, false);
        let b = FloatVal::new(1.0 + 1.5e-9, 1e-9, false);
        assert!(a.agrees_with(&b, 0.0));
        assert!(!a.agrees_with(&FloatVal::exact(1.1), 1e-3));
    }
}
