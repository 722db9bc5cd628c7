//! Jackson q-integrals
//!
//! ```text
//! ∫₀^a f(t) d_q t = (1−q) a Σ_{j≥0} q^j f(a q^j)
//! ```
//!
//! and their iterates over the simplex `1 > t₁ > … > t_n > 0`, which
//! represent q-polylogarithms:
//! `λ_q[s; y] = (−1)^m ∫ ∏_k ω[0]^{s_k−1} ω[y_k]` with `ω[b] = d_q t/(t−b)`.

use crate::error::{Error, Result};
use crate::qcore::{ComplexVal, EvalParams, FloatVal, Mode, Rational, Value};
use num_complex::Complex64;
use num_traits::{One, Zero};
use std::fmt;

/// `(1−q) a Σ_{j<J} q^j f(a q^j)`. The bound is the size of the next
/// omitted block of the sum, `a q^J |f(a q^{J−1})|`, and is heuristic.
pub fn jackson_integral(f: &dyn Fn(f64) -> f64, a: f64, levels: usize, p: &EvalParams) -> Result<Value> {
    let cfg = &p.backend;
    if cfg.mode == Mode::Exact {
        return Err(Error::Unsupported("numeric Jackson integrals need a numeric backend".into()));
    }
    cfg.validate()?;
    if !(a > 0.0) {
        return Err(Error::Domain(format!("upper limit must be positive, got {a}")));
    }
    if levels == 0 {
        return Err(Error::Parameter("at least one lattice point is needed".into()));
    }
    let q = cfg.q_f64();
    let mut sum = 0.0;
    let mut qj = 1.0;
    let mut last = 0.0;
    for _ in 0..levels {
        last = f(a * qj);
        sum += qj * last;
        qj *= q;
    }
    let v = (1.0 - q) * a * sum;
    let bound = a * qj * last.abs() + v.abs() * f64::EPSILON * (levels as f64 + 10.0);
    Ok(cfg.float_value(FloatVal::new(v, bound, true)))
}

/// Exact `∫₀^a Σ_i c_i t^i d_q t = Σ_i c_i a^{i+1} (1−q)/(1−q^{i+1})` for
/// rational `0 < q < 1`, summing every lattice point.
pub fn jackson_polynomial(coeffs: &[Rational], a: &Rational, q: &Rational) -> Result<Rational> {
    if *q <= Rational::zero() || *q >= Rational::one() {
        return Err(Error::Domain(format!("need 0 < q < 1, got {q}")));
    }
    let one = Rational::one();
    let mut acc = Rational::zero();
    let mut a_pow = a.clone();
    let mut q_pow = q.clone();
    for c in coeffs {
        acc += c * &a_pow * (&one - q) / (&one - &q_pow);
        a_pow *= a;
        q_pow *= q;
    }
    Ok(acc)
}

/// One factor of an iterated integrand.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum OmegaForm {
    /// `d_q t / t`
    Zero,
    /// `d_q t / (t − b)`, `b ≠ 0`
    Pole(Complex64),
}

impl fmt::Display for OmegaForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OmegaForm::Zero => f.write_str("ω[0]"),
            OmegaForm::Pole(b) if b.im == 0.0 => write!(f, "ω[{}]", b.re),
            OmegaForm::Pole(b) => write!(f, "ω[{b}]"),
        }
    }
}

/// Forms listed outermost first; variable `t₁` is outermost.
#[derive(Clone, Debug, PartialEq)]
pub struct SimplexIntegrand {
    pub forms: Vec<OmegaForm>,
}

impl SimplexIntegrand {
    /// `∏_k ω[0]^{s_k−1} ω[y_k]`.
    pub fn polylog(s: &[u32], y: &[Complex64]) -> Result<Self> {
        if s.len() != y.len() || s.is_empty() {
            return Err(Error::Parameter(format!("{} exponents but {} poles", s.len(), y.len())));
        }
        let mut forms = Vec::new();
        for (&sk, &yk) in s.iter().zip(y) {
            if sk == 0 {
                return Err(Error::Parameter("exponents must be positive".into()));
            }
            forms.extend(std::iter::repeat_n(OmegaForm::Zero, sk as usize - 1));
            forms.push(OmegaForm::Pole(yk));
        }
        Ok(SimplexIntegrand { forms })
    }

    fn validate(&self) -> Result<()> {
        match self.forms.last() {
            None => return Err(Error::Parameter("empty integrand".into())),
            Some(OmegaForm::Zero) => {
                return Err(Error::Divergence("innermost ω[0] diverges at t = 0".into()))
            }
            _ => {}
        }
        for f in &self.forms {
            if let OmegaForm::Pole(b) = f {
                if b.norm() <= 1.0 {
                    return Err(Error::Divergence(format!(
                        "pole {b} inside the closed unit disk; only |b| > 1 is supported"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// `F_l(e) = ∫` of forms `l..` with upper limit `q^e`, every level cut at
/// `levels` lattice points.
fn simplex_sum(forms: &[OmegaForm], q: f64, levels: usize) -> Result<Complex64> {
    let n = forms.len();
    let width = n * levels + 1;
    let qp: Vec<f64> = (0..width).map(|e| q.powi(e as i32)).collect();
    let mut inner = vec![Complex64::new(1.0, 0.0); width];
    for (l, form) in forms.iter().enumerate().rev() {
        let span = l * levels + 1;
        let mut cur = vec![Complex64::new(0.0, 0.0); span];
        for (e, slot) in cur.iter_mut().enumerate() {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 0..levels {
                let g = inner[e + j];
                acc += match form {
                    OmegaForm::Zero => g,
                    OmegaForm::Pole(b) => {
                        let den = qp[e + j] - b;
                        if den.norm() == 0.0 {
                            return Err(Error::Singular(format!("lattice point hits the pole {b}")));
                        }
                        g * qp[e + j] / den
                    }
                };
            }
            *slot = acc * (1.0 - q);
        }
        inner = cur;
    }
    Ok(inner[0])
}

/// The iterated Jackson integral over `1 > t₁ > … > t_n > 0`. The bound is
/// the change from `levels/2` to `levels` lattice points per level.
pub fn multiple_jackson(integrand: &SimplexIntegrand, levels: usize, p: &EvalParams) -> Result<Value> {
    let cfg = &p.backend;
    if cfg.mode == Mode::Exact {
        return Err(Error::Unsupported("multiple Jackson integrals need a numeric backend".into()));
    }
    cfg.validate()?;
    integrand.validate()?;
    if integrand.forms.len() > 6 {
        return Err(Error::Resource(format!("depth {} above 6", integrand.forms.len())));
    }
    if levels < 2 {
        return Err(Error::Parameter("need at least two lattice points per level".into()));
    }
    let q = cfg.q_f64();
    let v = simplex_sum(&integrand.forms, q, levels)?;
    let half = simplex_sum(&integrand.forms, q, levels / 2)?;
    let n = integrand.forms.len() as f64;
    let bound = (v - half).norm() + v.norm() * f64::EPSILON * (levels as f64 + 10.0) * n * n;
    let real = integrand
        .forms
        .iter()
        .all(|f| !matches!(f, OmegaForm::Pole(b) if b.im != 0.0));
    Ok(if real && cfg.mode == Mode::Float {
        Value::Float(FloatVal::new(v.re, bound, true))
    } else {
        Value::Complex(ComplexVal::new(v, bound, true))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::{rat, BackendConfig};

    #[test]
    fn single_integrals() {
        let p = EvalParams::from(BackendConfig::float(0.5));
        let v = jackson_integral(&|t| t * t, 1.0, 60, &p).unwrap();
        assert!((v.as_float().unwrap().value - 4.0 / 7.0).abs() < 1e-14);
        let v = jackson_integral(&|_| 1.0, 1.0, 60, &p).unwrap();
        assert!((v.as_float().unwrap().value - 1.0).abs() < 1e-14);
        let v = jackson_integral(&|t| t, 0.5, 60, &p).unwrap();
        assert!((v.as_float().unwrap().value - 1.0 / 6.0).abs() < 1e-14);
    }

    #[test]
    fn exact_power_rule() {
        let c = vec![rat(0, 1), rat(0, 1), rat(1, 1)];
        assert_eq!(jackson_polynomial(&c, &rat(1, 1), &rat(1, 2)).unwrap(), rat(4, 7));
    }

    #[test]
    fn depth_one_is_lambda() {
        let p = EvalParams::from(BackendConfig::float(0.5).with_tol(1e-13));
        let y = [Complex64::new(3.0, 0.0)];
        let j = multiple_jackson(&SimplexIntegrand::polylog(&[2], &y).unwrap(), 80, &p).unwrap();
        let l = crate::series::eval_lambda(&[2], &y, &p).unwrap();
        // one ω[y] form: the integral is −λ
        assert!((&j + &l).is_zero_within(1e-12), "{j} {l}");
    }

    #[test]
    fn rejects_unit_pole() {
        let p = EvalParams::from(BackendConfig::float(0.5));
        let s = SimplexIntegrand::polylog(&[2], &[Complex64::new(1.0, 0.0)]).unwrap();
        assert!(matches!(multiple_jackson(&s, 10, &p), Err(Error::Divergence(_))));
    }
}
