use super::text::{format_terms, parse_terms};
use super::{rational_to_f64, QPoly, Rational};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

/// Power series in `q` known modulo `q^order`.
///
/// Binary operations return a series of the smaller operand order, so no
/// result ever claims more precision than its inputs carry.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QSeries {
    coeffs: Vec<Rational>,
}

impl QSeries {
    /// Builds a series of the given order, padding or truncating `coeffs`.
    pub fn from_coeffs(mut coeffs: Vec<Rational>, order: usize) -> Self {
        coeffs.resize(order, Rational::zero());
        QSeries { coeffs }
    }

    pub fn from_integers(ints: Vec<BigInt>, order: usize) -> Self {
        Self::from_coeffs(ints.into_iter().map(Rational::from_integer).collect(), order)
    }

    pub fn zero(order: usize) -> Self {
        Self::from_coeffs(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Rational::one(), order)
    }

    pub fn constant(c: Rational, order: usize) -> Self {
        Self::from_coeffs(vec![c], order)
    }

    /// `q^e` truncated at `order`.
    pub fn q_pow(e: usize, order: usize) -> Self {
        let mut v = vec![Rational::zero(); order];
        if e < order {
            v[e] = Rational::one();
        }
        QSeries { coeffs: v }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, e: usize) -> Rational {
        self.coeffs.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Index of the first nonzero coefficient, `None` if zero mod `q^order`.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::from_coeffs(self.coeffs[..order.min(self.order())].to_vec(), order.min(self.order()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        QSeries {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiplies by a polynomial; cheaper than a full series product.
    pub fn mul_poly(&self, p: &QPoly) -> Self {
        let n = self.order();
        let mut v = vec![Rational::zero(); n];
        for (j, b) in p.coeffs().iter().enumerate().take(n) {
            if b.is_zero() {
                continue;
            }
            for i in 0..n - j {
                if !self.coeffs[i].is_zero() {
                    v[i + j] += &self.coeffs[i] * b;
                }
            }
        }
        QSeries { coeffs: v }
    }

    /// Multiplicative inverse; needs a nonzero constant term.
    pub fn invert(&self) -> Result<Self> {
        let n = self.order();
        if n == 0 {
            return Ok(self.clone());
        }
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(Error::Singular("cannot invert a series with zero constant term".into()));
        }
        let inv0 = c0.recip();
        let mut out = vec![Rational::zero(); n];
        out[0] = inv0.clone();
        for k in 1..n {
            let mut acc = Rational::zero();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() {
                    acc += &self.coeffs[j] * &out[k - j];
                }
            }
            out[k] = -acc * &inv0;
        }
        Ok(QSeries { coeffs: out })
    }

    /// Formal derivative, losing one order of precision.
    fn derivative(&self) -> Vec<Rational> {
        (1..self.order())
            .map(|k| &self.coeffs[k] * Rational::from_integer(BigInt::from(k)))
            .collect()
    }

    /// `log(s)` for a series with constant term 1.
    pub fn log(&self) -> Result<Self> {
        let n = self.order();
        if n == 0 {
            return Ok(self.clone());
        }
        if !self.coeffs[0].is_one() {
            return Err(Error::Singular("log needs constant term 1".into()));
        }
        // log(s)' = s'/s
        let inv = self.invert()?;
        let d = self.derivative();
        let mut out = vec![Rational::zero(); n];
        for k in 1..n {
            let mut acc = Rational::zero();
            for j in 0..k {
                if !d[j].is_zero() {
                    acc += &d[j] * &inv.coeffs[k - 1 - j];
                }
            }
            out[k] = acc / Rational::from_integer(BigInt::from(k));
        }
        Ok(QSeries { coeffs: out })
    }

    /// `exp(s)` for a series with zero constant term.
    pub fn exp(&self) -> Result<Self> {
        let n = self.order();
        if n == 0 {
            return Ok(self.clone());
        }
        if !self.coeffs[0].is_zero() {
            return Err(Error::Singular("exp needs zero constant term".into()));
        }
        // k e_k = Σ_{j=1}^{k} j s_j e_{k−j}
        let mut out = vec![Rational::zero(); n];
        out[0] = Rational::one();
        for k in 1..n {
            let mut acc = Rational::zero();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() {
                    acc += &self.coeffs[j] * Rational::from_integer(BigInt::from(j)) * &out[k - j];
                }
            }
            out[k] = acc / Rational::from_integer(BigInt::from(k));
        }
        Ok(QSeries { coeffs: out })
    }

    /// `s(p(q))` for a polynomial `p` without constant term.
    pub fn compose(&self, p: &QPoly) -> Result<Self> {
        if !p.coeff(0).is_zero() {
            return Err(Error::Unsupported(
                "composition needs an inner polynomial without constant term".into(),
            ));
        }
        let n = self.order();
        let inner = p.to_series(n);
        let mut acc = QSeries::zero(n);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &inner) + &QSeries::constant(c.clone(), n);
        }
        Ok(acc)
    }

    /// Sum of the truncated series at a numeric `q`.
    pub fn eval_f64(&self, q: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * q + rational_to_f64(c))
    }

    /// `true` when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body = format_terms(self.coeffs.iter().enumerate());
        let tail = match self.order() {
            1 => "O(q)".to_string(),
            n => format!("O(q^{n})"),
        };
        if body.is_empty() {
            write!(f, "{tail}")
        } else {
            write!(f, "{body} + {tail}")
        }
    }
}

impl FromStr for QSeries {
    type Err = Error;

    /// Parses the [`Display`](fmt::Display) form; the `O(q^Q)` term is required.
    fn from_str(s: &str) -> Result<Self> {
        let parsed = parse_terms(s)?;
        let order = parsed
            .order
            .ok_or_else(|| Error::Parse(format!("series '{s}' lacks an O(q^Q) term")))?;
        if let Some(&e) = parsed.coeffs.keys().next_back() {
            if e >= order {
                return Err(Error::Parse(format!("term q^{e} beyond O(q^{order})")));
            }
        }
        let mut v = vec![Rational::zero(); order];
        for (e, c) in parsed.coeffs {
            v[e] = c;
        }
        Ok(QSeries { coeffs: v })
    }
}

impl Add<&QSeries> for &QSeries {
    type Output = QSeries;
    fn add(self, o: &QSeries) -> QSeries {
        let n = self.order().min(o.order());
        QSeries {
            coeffs: (0..n).map(|i| &self.coeffs[i] + &o.coeffs[i]).collect(),
        }
    }
}

impl Sub<&QSeries> for &QSeries {
    type Output = QSeries;
    fn sub(self, o: &QSeries) -> QSeries {
        let n = self.order().min(o.order());
        QSeries {
            coeffs: (0..n).map(|i| &self.coeffs[i] - &o.coeffs[i]).collect(),
        }
    }
}

impl Mul<&QSeries> for &QSeries {
    type Output = QSeries;
    fn mul(self, o: &QSeries) -> QSeries {
        let n = self.order().min(o.order());
        let mut v = vec![Rational::zero(); n];
        for i in 0..n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..n - i {
                if !o.coeffs[j].is_zero() {
                    v[i + j] += &self.coeffs[i] * &o.coeffs[j];
                }
            }
        }
        QSeries { coeffs: v }
    }
}

impl Neg for &QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        QSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::rat;

    #[test]
    fn geometric_inverse() {
        let s = QPoly::one_minus_q_pow(1).to_series(3);
        assert_eq!(s.invert().unwrap().to_string(), "1 + q + q^2 + O(q^3)");
    }

    #[test]
    fn mercator_log() {
        let s = QPoly::one_minus_q_pow(1).to_series(4).invert().unwrap();
        let l = s.log().unwrap();
        assert_eq!(l.coeffs(), &[rat(0, 1), rat(1, 1), rat(1, 2), rat(1, 3)]);
    }

    #[test]
    fn exp_of_zero_is_one() {
        assert_eq!(QSeries::zero(5).exp().unwrap(), QSeries::one(5));
    }

    #[test]
    fn zero_constant_term_is_singular() {
        assert!(matches!(QSeries::q_pow(1, 4).invert(), Err(Error::Singular(_))));
    }

    #[test]
    fn display_and_parse() {
        let s: QSeries = "q + q^2 - q^3 + 2q^4 - 4q^5 + O(q^6)".parse().unwrap();
        assert_eq!(s.order(), 6);
        assert_eq!(s.to_string(), "q + q^2 - q^3 + 2q^4 - 4q^5 + O(q^6)");
        assert_eq!(QSeries::zero(3).to_string(), "O(q^3)");
        assert_eq!("O(q^3)".parse::<QSeries>().unwrap(), QSeries::zero(3));
    }

    #[test]
    fn compose_with_q_squared() {
        // 1/(1 − q) at q ↦ q² is 1/(1 − q²)
        let s = QPoly::one_minus_q_pow(1).to_series(6).invert().unwrap();
        let c = s.compose(&QPoly::monomial(rat(1, 1), 2)).unwrap();
        assert_eq!(c.to_string(), "1 + q^2 + q^4 + O(q^6)");
    }
}
